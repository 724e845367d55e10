#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "isores/double_description.hpp"
#include "isores/types.hpp"

namespace isores {

// {x : A x <= b} with unit-norm rows. Generators are computed once at
// construction and shared between copies.
class HPolyhedron {
 public:
  // Throws Error(kDegenerateBody) if the region is empty or has empty interior.
  HPolyhedron(Matrix A, Vector b, const Tolerances& tol = {});

  // Cone {d : A d <= 0}; may be lower dimensional (used for recession cones).
  static HPolyhedron cone(const Matrix& A, const Tolerances& tol = {});
  static HPolyhedron whole_space(int dim);

  int dim() const { return static_cast<int>(A_.cols()); }
  Eigen::Index num_constraints() const { return A_.rows(); }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const Tolerances& tolerances() const { return tol_; }
  bool is_whole_space() const { return A_.rows() == 0; }

  bool contains(const Vector& x) const;
  double support(const Vector& u) const;
  const GeneratorRep& generators() const { return *generators_; }

 private:
  HPolyhedron(Matrix A, Vector b, const Tolerances& tol, bool require_interior);

  Matrix A_;
  Vector b_;
  Tolerances tol_;
  std::shared_ptr<const GeneratorRep> generators_;
};

struct HalfSpace {
  Vector normal;  // unit outward normal
  double offset;  // {x : normal.x <= offset}
};

HalfSpace make_halfspace(const Vector& normal, double offset);

// Z + D: Z = span(z_basis), D a bounded polyhedron written in the coordinates
// of perp_basis (an orthonormal basis of Z^perp).
class CylinderBody {
 public:
  CylinderBody(Matrix z_basis, HPolyhedron cross_section, std::optional<Matrix> perp_basis = {},
               const Tolerances& tol = {});

  int dim() const { return static_cast<int>(z_basis_.rows()); }
  int axis_dim() const { return static_cast<int>(z_basis_.cols()); }
  const Matrix& z_basis() const { return z_basis_; }
  const Matrix& perp_basis() const { return perp_basis_; }
  const HPolyhedron& cross_section() const { return cross_section_; }

  bool contains(const Vector& x) const;
  double support(const Vector& u) const;
  HPolyhedron to_hpolyhedron() const;

 private:
  Matrix z_basis_;
  Matrix perp_basis_;
  HPolyhedron cross_section_;
  Tolerances tol_;
};

// Non-polyhedral bodies. Callbacks must be reentrant.
struct SupportOracle {
  int dim = 0;
  std::function<double(const Vector&)> support;  // unit u -> h(u), +inf allowed
  std::function<bool(const Vector&)> contains;
  Vector interior_point;
  std::optional<Vector> recession_hint;  // unit recession direction, if known
  std::string label;
};

// {x_N >= a |x'|^2}
SupportOracle make_paraboloid(int dim, double curvature = 1.0);
SupportOracle make_ball_oracle(const Vector& center, double radius);
SupportOracle make_polyhedral_oracle(const HPolyhedron& P);

// Spot check of subadditivity h(u + w) <= h(u) + h(w) (h extended
// 1-homogeneously) on random unit pairs. Returns the number of violations.
int check_support_oracle(const SupportOracle& oracle, int pairs, std::uint64_t seed,
                         double tol = 1e-7);

class ConvexBody {
 public:
  using Rep = std::variant<HPolyhedron, CylinderBody, SupportOracle, HalfSpace>;

  ConvexBody(HPolyhedron p) : rep_(std::move(p)) {}
  ConvexBody(CylinderBody c) : rep_(std::move(c)) {}
  ConvexBody(SupportOracle o) : rep_(std::move(o)) {}
  ConvexBody(HalfSpace h) : rep_(std::move(h)) {}

  const Rep& rep() const { return rep_; }
  int dim() const;
  bool is_oracle() const { return std::holds_alternative<SupportOracle>(rep_); }
  std::string kind() const;

  bool contains(const Vector& x) const;
  // u must have unit norm within tolerances.unit.
  double support(const Vector& u) const;

  // H-form for the polyhedral alternatives; nullopt for oracles.
  std::optional<HPolyhedron> as_polyhedron() const;
  // A point of the interior (Chebyshev center for polyhedra).
  Vector interior_point() const;

 private:
  Rep rep_;
};

bool contains(const ConvexBody& body, const Vector& x);
double support(const ConvexBody& body, const Vector& u);

HPolyhedron recession_cone(const HPolyhedron& P);
GeneratorRep to_generators(const HPolyhedron& P);

// Projection onto span(basis), expressed in the coordinates y = basis^T x.
// Polyhedral inputs give an HPolyhedron (possibly the whole subspace);
// oracles give a projected support oracle.
ConvexBody project(const ConvexBody& body, const Matrix& basis, const Tolerances& tol = {});

// lambda (C - x)
ConvexBody translate_scale(const ConvexBody& body, const Vector& x, double lambda);

// Image under y = Q x + t with Q orthogonal.
ConvexBody rigid_motion(const ConvexBody& body, const Matrix& Q, const Vector& t);

// Chebyshev center and radius of {A x <= b} (rows unit norm); radius capped at cap.
std::pair<Vector, double> chebyshev_center(const Matrix& A, const Vector& b, double cap = 1.0);

}  // namespace isores
