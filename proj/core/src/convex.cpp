#include "isores/convex.hpp"

#include <cmath>
#include <random>

#include "isores/errors.hpp"
#include "isores/linalg.hpp"

namespace isores {
namespace {

void check_finite(const Matrix& M, const char* what) {
  if (!M.allFinite()) throw InputError(std::string(what) + " has non-finite entries");
}

void check_dim(int expected, Eigen::Index got) {
  if (got != expected)
    throw InputError("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                     std::to_string(got));
}

void check_unit(const Vector& u, double tol) {
  if (std::abs(u.norm() - 1.0) > tol) throw InputError("support direction must have unit norm");
}

}  // namespace

HPolyhedron::HPolyhedron(Matrix A, Vector b, const Tolerances& tol)
    : HPolyhedron(std::move(A), std::move(b), tol, true) {}

HPolyhedron::HPolyhedron(Matrix A, Vector b, const Tolerances& tol, bool require_interior)
    : tol_(tol) {
  if (A.rows() != b.size()) throw InputError("A and b row counts differ");
  if (A.cols() < 1 || A.cols() > 8) throw InputError("dimension must be in [1, 8]");
  check_finite(A, "A");
  check_finite(b, "b");
  const Eigen::Index N = A.cols();
  A_.resize(0, N);
  b_.resize(0);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double n = A.row(i).norm();
    if (n == 0.0) {
      if (b(i) < -tol.slack) throw Error(ErrorCode::kDegenerateBody, "infeasible zero row");
      continue;
    }
    A_.conservativeResize(A_.rows() + 1, N);
    b_.conservativeResize(b_.size() + 1);
    A_.row(A_.rows() - 1) = A.row(i) / n;
    b_(b_.size() - 1) = b(i) / n;
  }
  auto gens = std::make_shared<GeneratorRep>(dd::h_to_v(A_, b_, tol.slack));
  if (gens->vertices.empty()) throw Error(ErrorCode::kDegenerateBody, "polyhedron is empty");
  if (require_interior) {
    Matrix span(N, static_cast<Eigen::Index>(gens->vertices.size() - 1 + gens->rays.size()));
    Eigen::Index c = 0;
    for (std::size_t i = 1; i < gens->vertices.size(); ++i)
      span.col(c++) = gens->vertices[i] - gens->vertices[0];
    for (const Vector& r : gens->rays) span.col(c++) = r;
    if (range_basis(span, 1e-9).cols() < N)
      throw Error(ErrorCode::kDegenerateBody, "polyhedron has empty interior");
  }
  generators_ = std::move(gens);
}

HPolyhedron HPolyhedron::cone(const Matrix& A, const Tolerances& tol) {
  return HPolyhedron(A, Vector::Zero(A.rows()), tol, false);
}

HPolyhedron HPolyhedron::whole_space(int dim) {
  return HPolyhedron(Matrix(0, dim), Vector(0), Tolerances{}, true);
}

bool HPolyhedron::contains(const Vector& x) const {
  check_dim(dim(), x.size());
  if (A_.rows() == 0) return true;
  return (A_ * x - b_).maxCoeff() <= tol_.slack;
}

double HPolyhedron::support(const Vector& u) const {
  check_dim(dim(), u.size());
  check_unit(u, tol_.unit);
  return generators_->support(u, tol_.slack);
}

HalfSpace make_halfspace(const Vector& normal, double offset) {
  const double n = normal.norm();
  if (!(n > 0.0) || !normal.allFinite() || !std::isfinite(offset))
    throw InputError("half-space needs a finite nonzero normal");
  return HalfSpace{normal / n, offset / n};
}

CylinderBody::CylinderBody(Matrix z_basis, HPolyhedron cross_section,
                           std::optional<Matrix> perp_basis, const Tolerances& tol)
    : z_basis_(std::move(z_basis)), cross_section_(std::move(cross_section)), tol_(tol) {
  const int N = static_cast<int>(z_basis_.rows());
  if (z_basis_.cols() < 1 || z_basis_.cols() >= N)
    throw InputError("cylinder axis dimension must lie in [1, N-1]");
  if (!is_orthonormal(z_basis_, tol.orthonormal)) throw InputError("z_basis is not orthonormal");
  if (perp_basis) {
    perp_basis_ = std::move(*perp_basis);
    if (perp_basis_.rows() != N || perp_basis_.cols() != N - z_basis_.cols())
      throw InputError("perp_basis has the wrong shape");
    Matrix full(N, N);
    full << z_basis_, perp_basis_;
    if (!is_orthonormal(full, tol.orthonormal))
      throw InputError("perp_basis is not an orthonormal complement of z_basis");
  } else {
    perp_basis_ = complement_basis(z_basis_, N);
  }
  check_dim(static_cast<int>(perp_basis_.cols()), cross_section_.dim());
  if (!cross_section_.generators().bounded())
    throw Error(ErrorCode::kDegenerateBody, "cylinder cross-section is unbounded");
}

bool CylinderBody::contains(const Vector& x) const {
  check_dim(dim(), x.size());
  return cross_section_.contains(perp_basis_.transpose() * x);
}

double CylinderBody::support(const Vector& u) const {
  check_dim(dim(), u.size());
  check_unit(u, tol_.unit);
  if ((z_basis_.transpose() * u).norm() > tol_.slack) return kInf;
  return cross_section_.generators().support(perp_basis_.transpose() * u, tol_.slack);
}

HPolyhedron CylinderBody::to_hpolyhedron() const {
  return HPolyhedron(cross_section_.A() * perp_basis_.transpose(), cross_section_.b(), tol_);
}

SupportOracle make_paraboloid(int dim, double curvature) {
  if (dim < 2 || dim > 8) throw InputError("paraboloid dimension must be in [2, 8]");
  if (!(curvature > 0.0)) throw InputError("paraboloid curvature must be positive");
  SupportOracle o;
  o.dim = dim;
  o.label = "paraboloid";
  o.support = [dim, curvature](const Vector& u) {
    const double un = u(dim - 1);
    if (un >= 0.0) return kInf;
    return -u.head(dim - 1).squaredNorm() / (4.0 * curvature * un);
  };
  o.contains = [dim, curvature](const Vector& x) {
    return x(dim - 1) - curvature * x.head(dim - 1).squaredNorm() >= -1e-12;
  };
  o.interior_point = Vector::Zero(dim);
  o.interior_point(dim - 1) = 1.0;
  Vector hint = Vector::Zero(dim);
  hint(dim - 1) = 1.0;
  o.recession_hint = hint;
  return o;
}

SupportOracle make_ball_oracle(const Vector& center, double radius) {
  if (!(radius > 0.0)) throw InputError("ball radius must be positive");
  SupportOracle o;
  o.dim = static_cast<int>(center.size());
  o.label = "ball";
  o.support = [center, radius](const Vector& u) { return center.dot(u) + radius; };
  o.contains = [center, radius](const Vector& x) {
    return (x - center).norm() <= radius * (1.0 + 1e-12);
  };
  o.interior_point = center;
  return o;
}

SupportOracle make_polyhedral_oracle(const HPolyhedron& P) {
  SupportOracle o;
  o.dim = P.dim();
  o.label = "polyhedral";
  o.support = [P](const Vector& u) { return P.generators().support(u, P.tolerances().slack); };
  o.contains = [P](const Vector& x) { return P.contains(x); };
  o.interior_point = chebyshev_center(P.A(), P.b()).first;
  const auto& rays = P.generators().rays;
  if (!rays.empty()) {
    Vector sum = Vector::Zero(P.dim());
    for (const Vector& r : rays) sum += r;
    o.recession_hint = sum.norm() > 1e-9 ? Vector(sum.normalized()) : rays.front();
  }
  return o;
}

int check_support_oracle(const SupportOracle& oracle, int pairs, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_unit = [&] {
    Vector u(oracle.dim);
    for (int i = 0; i < oracle.dim; ++i) u(i) = gauss(rng);
    return Vector(u.normalized());
  };
  int violations = 0;
  for (int k = 0; k < pairs; ++k) {
    const Vector u = random_unit();
    const Vector w = random_unit();
    const Vector s = u + w;
    const double ns = s.norm();
    if (ns < 1e-6) continue;
    const double rhs = oracle.support(u) + oracle.support(w);
    if (std::isinf(rhs)) continue;
    const double lhs = ns * oracle.support(s / ns);
    if (lhs > rhs + tol) ++violations;
  }
  return violations;
}

int ConvexBody::dim() const {
  return std::visit(
      [](const auto& b) -> int {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return static_cast<int>(b.normal.size());
        } else if constexpr (std::is_same_v<T, SupportOracle>) {
          return b.dim;
        } else {
          return b.dim();
        }
      },
      rep_);
}

std::string ConvexBody::kind() const {
  switch (rep_.index()) {
    case 0: return "hpoly";
    case 1: return "cylinder";
    case 2: return "oracle";
    default: return "halfspace";
  }
}

bool ConvexBody::contains(const Vector& x) const {
  check_dim(dim(), x.size());
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return b.normal.dot(x) <= b.offset + Tolerances{}.slack;
        } else {
          return b.contains(x);
        }
      },
      rep_);
}

double ConvexBody::support(const Vector& u) const {
  check_dim(dim(), u.size());
  check_unit(u, Tolerances{}.unit);
  return std::visit(
      [&](const auto& b) -> double {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HalfSpace>) {
          return (u - b.normal).norm() <= Tolerances{}.slack ? b.offset : kInf;
        } else {
          return b.support(u);
        }
      },
      rep_);
}

std::optional<HPolyhedron> ConvexBody::as_polyhedron() const {
  if (const auto* p = std::get_if<HPolyhedron>(&rep_)) return *p;
  if (const auto* c = std::get_if<CylinderBody>(&rep_)) return c->to_hpolyhedron();
  if (const auto* h = std::get_if<HalfSpace>(&rep_)) {
    Matrix A = h->normal.transpose();
    Vector b(1);
    b(0) = h->offset;
    return HPolyhedron(A, b);
  }
  return std::nullopt;
}

Vector ConvexBody::interior_point() const {
  if (const auto* o = std::get_if<SupportOracle>(&rep_)) return o->interior_point;
  const HPolyhedron P = *as_polyhedron();
  return chebyshev_center(P.A(), P.b()).first;
}

bool contains(const ConvexBody& body, const Vector& x) { return body.contains(x); }
double support(const ConvexBody& body, const Vector& u) { return body.support(u); }

HPolyhedron recession_cone(const HPolyhedron& P) {
  return HPolyhedron::cone(P.A(), P.tolerances());
}

GeneratorRep to_generators(const HPolyhedron& P) { return P.generators(); }

namespace {

std::vector<Vector> sphere_directions(int dim, int count, std::uint64_t seed) {
  std::vector<Vector> dirs;
  for (int i = 0; i < dim; ++i) {
    dirs.push_back(Vector::Unit(dim, i));
    dirs.push_back(-Vector::Unit(dim, i));
  }
  if (dim == 1) return dirs;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  while (static_cast<int>(dirs.size()) < count) {
    Vector u(dim);
    for (int i = 0; i < dim; ++i) u(i) = gauss(rng);
    dirs.push_back(u.normalized());
  }
  return dirs;
}

SupportOracle project_oracle(const SupportOracle& o, const Matrix& B) {
  const int k = static_cast<int>(B.cols());
  SupportOracle out;
  out.dim = k;
  out.label = o.label + "-projected";
  out.support = [o, B](const Vector& w) { return o.support(B * w); };
  const std::vector<Vector> dirs = sphere_directions(k, 256, 0x5eed);
  std::vector<double> h(dirs.size());
  for (std::size_t i = 0; i < dirs.size(); ++i) h[i] = o.support(B * dirs[i]);
  out.contains = [dirs, h](const Vector& y) {
    for (std::size_t i = 0; i < dirs.size(); ++i)
      if (dirs[i].dot(y) > h[i] + 1e-9) return false;
    return true;
  };
  out.interior_point = B.transpose() * o.interior_point;
  if (o.recession_hint) {
    const Vector r = B.transpose() * *o.recession_hint;
    if (r.norm() > 1e-9) out.recession_hint = r.normalized();
  }
  return out;
}

}  // namespace

ConvexBody project(const ConvexBody& body, const Matrix& basis, const Tolerances& tol) {
  check_dim(body.dim(), basis.rows());
  if (basis.cols() < 1 || basis.cols() > basis.rows())
    throw InputError("projection basis must have between 1 and N columns");
  if (!is_orthonormal(basis, 1e-9)) throw InputError("projection basis is not orthonormal");
  if (const auto* o = std::get_if<SupportOracle>(&body.rep())) return project_oracle(*o, basis);

  const HPolyhedron P = *body.as_polyhedron();
  const GeneratorRep& g = P.generators();
  const int k = static_cast<int>(basis.cols());
  std::vector<Vector> verts, rays;
  for (const Vector& v : g.vertices) verts.push_back(basis.transpose() * v);
  for (const Vector& r : g.rays) {
    const Vector pr = basis.transpose() * r;
    const double n = pr.norm();
    if (n > tol.slack) rays.push_back(pr / n);
  }
  const HalfspaceRep h = dd::v_to_h(verts, rays, k, tol.slack);
  if (h.A.rows() == 0) return HPolyhedron::whole_space(k);
  return HPolyhedron(h.A, h.b, tol);
}

ConvexBody translate_scale(const ConvexBody& body, const Vector& x, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
  check_dim(body.dim(), x.size());
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          if (b.is_whole_space()) return b;
          return HPolyhedron(b.A(), lambda * (b.b() - b.A() * x), b.tolerances());
        } else if constexpr (std::is_same_v<T, CylinderBody>) {
          const HPolyhedron& D = b.cross_section();
          const Vector xp = b.perp_basis().transpose() * x;
          HPolyhedron D2(D.A(), lambda * (D.b() - D.A() * xp), D.tolerances());
          return CylinderBody(b.z_basis(), std::move(D2), b.perp_basis());
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          return HalfSpace{b.normal, lambda * (b.offset - b.normal.dot(x))};
        } else {
          SupportOracle o;
          o.dim = b.dim;
          o.label = b.label;
          o.support = [b, x, lambda](const Vector& u) {
            const double h = b.support(u);
            return std::isinf(h) ? h : lambda * (h - u.dot(x));
          };
          o.contains = [b, x, lambda](const Vector& y) {
            return b.contains(Vector(x + y / lambda));
          };
          o.interior_point = lambda * (b.interior_point - x);
          o.recession_hint = b.recession_hint;
          return o;
        }
      },
      body.rep());
}

ConvexBody rigid_motion(const ConvexBody& body, const Matrix& Q, const Vector& t) {
  check_dim(body.dim(), Q.rows());
  check_dim(body.dim(), t.size());
  if (Q.rows() != Q.cols() || !is_orthonormal(Q, 1e-9)) throw InputError("Q must be orthogonal");
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          if (b.is_whole_space()) return b;
          const Matrix A2 = b.A() * Q.transpose();
          return HPolyhedron(A2, b.b() + A2 * t, b.tolerances());
        } else if constexpr (std::is_same_v<T, CylinderBody>) {
          const HPolyhedron& D = b.cross_section();
          const Vector shift = b.perp_basis().transpose() * (Q.transpose() * t);
          HPolyhedron D2(D.A(), D.b() + D.A() * shift, D.tolerances());
          return CylinderBody(Q * b.z_basis(), std::move(D2), Matrix(Q * b.perp_basis()));
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          const Vector n = Q * b.normal;
          return HalfSpace{n, b.offset + n.dot(t)};
        } else {
          SupportOracle o;
          o.dim = b.dim;
          o.label = b.label;
          o.support = [b, Q, t](const Vector& u) {
            const double h = b.support(Q.transpose() * u);
            return std::isinf(h) ? h : h + u.dot(t);
          };
          o.contains = [b, Q, t](const Vector& y) { return b.contains(Q.transpose() * (y - t)); };
          o.interior_point = Q * b.interior_point + t;
          if (b.recession_hint) o.recession_hint = Q * *b.recession_hint;
          return o;
        }
      },
      body.rep());
}

std::pair<Vector, double> chebyshev_center(const Matrix& A, const Vector& b, double cap) {
  const Eigen::Index N = A.cols();
  if (A.rows() == 0) return {Vector::Zero(N), cap};
  Matrix L(A.rows() + 1, N + 1);
  Vector r(A.rows() + 1);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    L.row(i).head(N) = A.row(i);
    L(i, N) = A.row(i).norm();
    r(i) = b(i);
  }
  L.row(A.rows()).setZero();
  L(A.rows(), N) = 1.0;
  r(A.rows()) = cap;
  Vector c = Vector::Zero(N + 1);
  c(N) = 1.0;
  const dd::LpResult res = dd::maximize(L, r, c);
  if (res.status != dd::LpStatus::kOptimal)
    throw Error(ErrorCode::kDegenerateBody, "Chebyshev center problem is infeasible");
  return {res.argmax.head(N), res.argmax(N)};
}

}  // namespace isores
