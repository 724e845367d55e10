#pragma once

#include "isores/grid.hpp"
#include "isores/perimeter.hpp"

namespace isores {

struct MboConfig {
  double sigma_cells = 2.5;  // Gaussian width in cells
  int max_iterations = 40;
};

struct MboResult {
  int iterations = 0;
  bool converged = false;  // reached a fixed point or a 2-cycle
  double energy = 0.0;     // relative perimeter of the returned set
};

// Volume-preserving threshold dynamics: smooth the indicator, keep the E.count
// free cells with the largest smoothed value. Returns the lowest-energy iterate.
MboResult threshold_dynamics(DiscreteSet& E, const Grid& g, const Stencil& s,
                             const MboConfig& cfg = {});

// Separable Gaussian of the indicator on a box, with free-space normalization
// (obstacle cells carry no weight). Values are indexed in box-local order.
std::vector<float> smooth_indicator(const DiscreteSet& E, const Grid& g, const Box& box,
                                    double sigma_cells, bool normalize);

}  // namespace isores
