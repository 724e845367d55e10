#pragma once

#include <vector>

#include "isores/grid.hpp"
#include "isores/perimeter.hpp"

namespace isores {

struct RelaxConfig {
  std::size_t max_cells = std::size_t{1} << 15;  // coarse grid budget
  int max_iterations = 2000;
  int check_every = 25;
  double gap_tolerance = 1e-3;  // relative primal-dual gap
  double volume_penalty = 0.0;  // mu per unit volume; 0 picks Lambda0 v^{-1/N}
};

// TV relaxation min sum w |Du| + mu |h^N sum u - v| over u in [0,1] on the free
// cells, solved by primal-dual splitting on a coarsened copy of the grid.
struct RelaxedField {
  Grid grid;
  std::vector<double> u;
  double energy = 0.0;  // relaxed energy in physical units
  double gap = 0.0;     // relative duality gap at the last check
  int iterations = 0;
  bool converged = false;
  double mass = 0.0;  // h^N sum u
};

RelaxedField relax(const Grid& fine, double v, const RelaxConfig& cfg = {});

// Super-level set of the relaxed field on the fine grid holding exactly
// round(v / h^N) free cells (largest values first, index order on ties).
DiscreteSet threshold_field(const RelaxedField& field, const Grid& fine, std::size_t count);

// Fenchel conjugate of u -> box(u) + mu |sum u - V| evaluated at c.
double box_volume_conjugate(std::vector<double> c, double mu, double V);

}  // namespace isores
