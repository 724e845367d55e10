#pragma once

#include <cstdint>

#include "isores/grid.hpp"
#include "isores/perimeter.hpp"

namespace isores {

struct AnnealConfig {
  int sweeps = 30;
  double initial_temperature = 0.5;  // in units of the smallest stencil weight
  double cooling = 0.85;             // per sweep
  int greedy_passes = 60;
  std::uint64_t seed = 0;
};

struct AnnealStats {
  int sweeps = 0;
  int greedy_passes = 0;
  std::size_t accepted = 0;
  double energy_before = 0.0;
  double energy_after = 0.0;
};

// Volume-preserving swaps (remove a boundary cell, add a free cell next to E)
// under Metropolis acceptance with geometric cooling, then greedy passes that
// only take strict improvements of the relative perimeter.
AnnealStats anneal(DiscreteSet& E, const Grid& g, const Stencil& s, const AnnealConfig& cfg = {});

}  // namespace isores
