#pragma once

#include <vector>

#include "isores/types.hpp"

namespace isores {

// Vertex/ray form of a polyhedron: conv(vertices) + cone(rays). Rays have unit
// norm; a line through the recession cone appears as a pair of opposite rays.
struct GeneratorRep {
  int dim = 0;
  std::vector<Vector> vertices;
  std::vector<Vector> rays;

  bool empty() const { return vertices.empty(); }
  bool bounded() const { return rays.empty(); }
  // sup <x, u> over the generated set; +inf if some ray has u.r > slack.
  double support(const Vector& u, double slack = 1e-9) const;
};

struct HalfspaceRep {
  Matrix A;
  Vector b;
};

namespace dd {

// Extreme rays (unit norm) of the pointed cone {y : H y <= 0}, by the
// double-description method with the combinatorial adjacency test.
// Throws Error(kDegenerateBody) if the cone is not pointed.
std::vector<Vector> extreme_rays(const Matrix& H, double tol = 1e-9);

// Generators of {x : A x <= b}. Returns an empty vertex list when infeasible.
GeneratorRep h_to_v(const Matrix& A, const Vector& b, double tol = 1e-9);

// Facets of conv(vertices) + cone(rays), which must be full-dimensional in R^dim.
// Rows come back with unit norm. A generated set equal to R^dim yields zero rows.
HalfspaceRep v_to_h(const std::vector<Vector>& vertices, const std::vector<Vector>& rays,
                    int dim, double tol = 1e-9);

enum class LpStatus { kOptimal, kUnbounded, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Vector argmax;
};

// max c.x subject to A x <= b, by vertex enumeration. Meant for the small
// systems that appear in this library.
LpResult maximize(const Matrix& A, const Vector& b, const Vector& c, double tol = 1e-9);

}  // namespace dd
}  // namespace isores
