#pragma once

#include <array>
#include <vector>

#include "isores/grid.hpp"

namespace isores {

// Cauchy-Crofton stencil: 8 undirected directions in 2D (16 directed), 13 in
// 3D (26 directed). Weights already include the pitch factor h^{N-1}.
struct Stencil {
  int dim = 3;
  std::vector<std::array<int, 3>> dirs;
  std::vector<double> weights;
  std::vector<std::ptrdiff_t> offsets;
  // 1 / planar_response(facet normal) per obstacle facet; cuts against an
  // obstacle cell are rescaled so flat contact areas are unbiased.
  std::vector<double> facet_scale;
};

Stencil crofton_stencil(const Grid& g);

// Expected estimate per unit area of a plane with unit normal nu. Equals 1 on
// average over the sphere; 0.927 for axis planes in 3D.
double planar_response(const Stencil& s, const Vector& nu, double pitch);

// Voronoi measure (angle in 2D, solid angle in 3D) of each undirected
// direction on the half circle / half sphere; sums to pi or 2 pi.
std::vector<double> crofton_direction_measures(int dim);

struct PerimeterSplit {
  double relative = 0.0;  // E against free cells and outside-window cells
  double obstacle = 0.0;  // E against obstacle cells
  double total() const { return relative + obstacle; }
};

PerimeterSplit perimeter_split(const DiscreteSet& E, const Grid& g, const Stencil& s);
PerimeterSplit perimeter_split(const DiscreteSet& E, const Grid& g, const Stencil& s, const Box& box);
double relative_perimeter(const DiscreteSet& E, const Grid& g);
double obstacle_perimeter(const DiscreteSet& E, const Grid& g);

// Change of the split when free cell i toggles membership.
PerimeterSplit flip_delta(const DiscreteSet& E, const Grid& g, const Stencil& s, std::size_t i);

}  // namespace isores
