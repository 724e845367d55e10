#pragma once

#include <cstdint>
#include <vector>

#include "isores/grid.hpp"
#include "isores/profiles.hpp"

namespace isores {

struct CurvatureStats {
  std::size_t samples = 0;
  double mean = 0.0;
  double spread = 0.0;  // standard deviation of H over sampled boundary cells
  double max_abs = 0.0;
  double bound = 0.0;  // Lambda0 v^{-1/N}
};

struct DensityStats {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_ratio = 0.0;  // min over samples of min(|E ∩ B|, |B \ E|) / r^N
};

struct Diagnostics {
  std::size_t components = 0;
  std::vector<std::size_t> component_sizes;  // descending
  double diameter = 0.0;
  DensityStats density;
  CurvatureStats curvature;
  bool touches_window = false;  // E reaches the window boundary
};

// Face-connected components; sizes in descending order.
std::vector<std::size_t> component_sizes(const DiscreteSet& E, const Grid& g);
// Largest distance between cell centers of E.
double set_diameter(const DiscreteSet& E, const Grid& g);
DensityStats density_check(const DiscreteSet& E, const Grid& g, const SolverConstants& k);
// Mean curvature as the divergence of the normal of a Gaussian-smoothed
// indicator, sampled on boundary cells away from the obstacle and the window.
CurvatureStats curvature_stats(const DiscreteSet& E, const Grid& g, const SolverConstants& k);

Diagnostics diagnostics(const DiscreteSet& E, const Grid& g, const SolverConstants& k);

struct AsymmetryResult {
  double asymmetry = 0.0;       // Fraenkel A(E) in [0, 2]
  double deficit = 0.0;         // P(E) / P(B^{(v)}) - 1 with the full perimeter
  double perimeter = 0.0;       // full perimeter P(E)
  double ball_perimeter = 0.0;  // N omega_N^{1/N} v^{(N-1)/N}
  Vector x0;
};

// Coordinate descent on the ball center from the barycenter plus 8 seeded
// perturbed starts.
AsymmetryResult asymmetry_deficit(const DiscreteSet& E, const Grid& g, std::uint64_t seed = 0);

// Hausdorff distance between the interface of E off the obstacle and the
// sphere of volume |E| centered at x0, divided by |E|^{1/N}.
double hausdorff_to_ball(const DiscreteSet& E, const Grid& g, const Vector& x0);

}  // namespace isores
