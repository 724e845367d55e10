#include "isores/candidates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isores/double_description.hpp"
#include "isores/errors.hpp"
#include "isores/profiles.hpp"

namespace isores {

namespace {

// Smallest r with x in B_r(q + r n); n = 0 gives |x - q|.
double capture_radius(const Vector& x, const Vector& q, const Vector& n) {
  const Vector d = x - q;
  if (n.size() == 0 || n.squaredNorm() == 0.0) return d.norm();
  const double t = n.dot(d);
  if (t <= 0.0) return std::numeric_limits<double>::infinity();
  return d.squaredNorm() / (2.0 * t);
}

// Cells of B_r(q + r n) for the smallest r holding `count` free cells; when
// side is nonzero only cells with side.(x - q) > 0 are eligible.
DiscreteSet select_nested(const Grid& g, const Vector& q, const Vector& n, std::size_t count,
                          const Vector& side = Vector()) {
  if (count == 0) throw InputError("candidate needs at least one cell");
  if (count > g.free_cells)
    throw Error(ErrorCode::kVolumeOverflow, "not enough free cells in the window");
  const int N = g.dim;
  const Vector nn = n.size() ? n : Vector::Zero(N);
  double r = ball_radius(static_cast<double>(count) * g.cell_volume(), N);
  const double limit = 4.0 * g.window_radius + 2.0 * g.pitch;
  for (;;) {
    // Cells of B_r(q + r n) lie in the box around its center.
    const Vector c = q + r * nn;
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < N; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      lo[ua] = std::max(0, static_cast<int>(std::floor((c(a) - r - g.origin(a)) / g.pitch)));
      hi[ua] = std::min(g.shape[ua] - 1,
                        static_cast<int>(std::ceil((c(a) + r - g.origin(a)) / g.pitch)));
    }
    std::vector<std::pair<double, std::size_t>> cells;
    Vector x(N);
    for (int k = lo[2]; k <= hi[2]; ++k)
      for (int j = lo[1]; j <= hi[1]; ++j)
        for (int i = lo[0]; i <= hi[0]; ++i) {
          const std::size_t idx = g.index(i, j, k);
          if (g.labels[idx] != Cell::kFree) continue;
          const std::array<int, 3> ijk{i, j, k};
          for (int a = 0; a < N; ++a) x(a) = g.origin(a) + g.pitch * ijk[static_cast<std::size_t>(a)];
          if (side.size() && side.dot(x - q) <= 0.0) continue;
          const double rc = capture_radius(x, q, nn);
          if (rc <= r) cells.emplace_back(rc, idx);
        }
    if (cells.size() >= count) {
      const auto mid = cells.begin() + static_cast<std::ptrdiff_t>(count);
      std::nth_element(cells.begin(), mid - 1, cells.end());
      DiscreteSet E(g.size());
      for (auto it = cells.begin(); it != mid; ++it) E.insert(it->second);
      return E;
    }
    if (r > limit)
      throw Error(ErrorCode::kVolumeOverflow, "ball family leaves the window before reaching volume");
    r *= 1.5;
  }
}

bool on_boundary(const ConvexBody& C, const Vector& p, const Vector& n, double eps) {
  return C.contains(p - eps * n) && !C.contains(p + eps * n);
}

// Orthonormal basis of n's complement.
Matrix tangent_basis(const Vector& n) {
  const int N = static_cast<int>(n.size());
  Matrix T(N, N - 1);
  int col = 0;
  Matrix Q = Matrix::Identity(N, N);
  Vector u = n.normalized();
  for (int e = 0; e < N && col < N - 1; ++e) {
    Vector v = Q.col(e) - u.dot(Q.col(e)) * u;
    for (int c = 0; c < col; ++c) v -= T.col(c).dot(v) * T.col(c);
    if (v.norm() < 1e-6) continue;
    T.col(col++) = v.normalized();
  }
  return T;
}

// sup { t in [0, cap] : p - t n in C }, assuming p is on the boundary.
double depth_along(const ConvexBody& C, const Vector& p, const Vector& n, double cap) {
  double lo = 0.0, hi = cap;
  if (C.contains(p - cap * n)) return cap;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (C.contains(p - mid * n) ? lo : hi) = mid;
  }
  return lo;
}

// Maximal facet inset s and the point of the inset facet nearest to target.
std::optional<Vector> facet_anchor(const HPolyhedron& P, Eigen::Index f, double cap,
                                   const Vector& target) {
  const Eigen::Index N = P.dim(), m = P.num_constraints();
  const Vector a = P.A().row(f).transpose();
  Matrix L(m + 2, N + 1);
  Vector rhs(m + 2);
  std::vector<double> slope(static_cast<std::size_t>(m), 0.0);
  Eigen::Index r = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (j == f) continue;
    const Vector aj = P.A().row(j).transpose();
    slope[static_cast<std::size_t>(j)] = (aj - aj.dot(a) * a).norm();
    L.row(r).head(N) = aj.transpose();
    L(r, N) = slope[static_cast<std::size_t>(j)];
    rhs(r++) = P.b()(j);
  }
  L.row(r).setZero();
  L.row(r).head(N) = a.transpose();
  rhs(r++) = P.b()(f);
  L.row(r).setZero();
  L.row(r).head(N) = -a.transpose();
  rhs(r++) = -P.b()(f);
  L.row(r).setZero();
  L(r, N) = 1.0;
  rhs(r++) = cap;
  Vector c = Vector::Zero(N + 1);
  c(N) = 1.0;
  const dd::LpResult res = dd::maximize(L.topRows(r), rhs.head(r), c);
  if (res.status != dd::LpStatus::kOptimal || res.value <= 1e-9) return std::nullopt;
  const double s = res.value;

  // Dykstra's alternating projections onto the inset facet.
  Vector x = target;
  std::vector<Vector> incr(static_cast<std::size_t>(m), Vector::Zero(N));
  for (int sweep = 0; sweep < 400; ++sweep) {
    const Vector before = x;
    for (Eigen::Index j = 0; j < m; ++j) {
      Vector& y = incr[static_cast<std::size_t>(j)];
      const Vector zz = x + y;
      const Vector aj = P.A().row(j).transpose();
      Vector proj = zz;
      if (j == f) {
        proj = zz - (aj.dot(zz) - P.b()(f)) * aj;
      } else {
        const double beta = P.b()(j) - s * slope[static_cast<std::size_t>(j)];
        const double viol = aj.dot(zz) - beta;
        if (viol > 0.0) proj = zz - viol * aj;
      }
      y = zz - proj;
      x = proj;
    }
    if ((x - before).norm() < 1e-13 * std::max(1.0, x.norm())) break;
  }
  x -= (a.dot(x) - P.b()(f)) * a;
  return x;
}

}  // namespace

DiscreteSet candidate_ball(const Grid& g, const Vector& center, std::size_t count) {
  return select_nested(g, center, Vector::Zero(g.dim), count);
}

DiscreteSet candidate_tangent_ball(const Grid& g, const Vector& anchor, const Vector& normal,
                                   double depth, std::size_t count) {
  const Vector n = normal.normalized();
  return select_nested(g, anchor - depth * n, n, count);
}

DiscreteSet candidate_halfball(const Grid& g, const Vector& anchor, const Vector& normal,
                               std::size_t count) {
  if (!g.obstacle) throw Error(ErrorCode::kNoFacet, "half-ball needs an obstacle");
  const int N = g.dim;
  const Vector n = normal.normalized();
  const double rho =
      std::pow(2.0 * static_cast<double>(count) * g.cell_volume() / unit_ball_volume(N), 1.0 / N);
  if ((anchor - g.center).norm() + rho > g.window_radius)
    throw Error(ErrorCode::kVolumeOverflow, "half-ball does not fit in the window");
  const double eps = 1e-6 * std::max(1.0, rho);
  const Matrix T = tangent_basis(n);
  bool flat = on_boundary(*g.obstacle, anchor, n, eps);
  const int angles = N == 2 ? 2 : 16;
  for (int ri = 1; ri <= 4 && flat; ++ri)
    for (int k = 0; k < angles && flat; ++k) {
      Vector w(N - 1);
      if (N == 2) {
        w(0) = k == 0 ? 1.0 : -1.0;
      } else {
        const double th = 2.0 * std::numbers::pi * k / angles;
        w << std::cos(th), std::sin(th);
      }
      const Vector p = anchor + (1.02 * rho * ri / 4.0) * (T * w);
      flat = on_boundary(*g.obstacle, p, n, eps);
    }
  if (!flat) {
    if (g.obstacle->is_oracle())
      throw Error(ErrorCode::kNoFacet, "obstacle boundary is not flat near the anchor");
    throw Error(ErrorCode::kInsufficientFlatArea, "facet is too small for the half-ball");
  }
  return select_nested(g, anchor, Vector::Zero(N), count, n);
}

std::pair<Vector, Vector> boundary_anchor(const Grid& g) {
  if (!g.obstacle) throw Error(ErrorCode::kNoFacet, "no obstacle");
  const ConvexBody& C = *g.obstacle;
  const int N = g.dim;
  const Vector xin = C.interior_point();
  Vector p;
  if (!C.contains(g.center)) {
    Vector lo = xin, hi = g.center;
    for (int it = 0; it < 80; ++it) {
      const Vector mid = 0.5 * (lo + hi);
      (C.contains(mid) ? lo : hi) = mid;
    }
    p = lo;
  } else {
    Vector dir = g.center - xin;
    if (dir.norm() < 1e-12) dir = Vector::Unit(N, 0);
    dir.normalize();
    double lo = 0.0, hi = std::max(1.0, g.window_radius);
    while (C.contains(g.center + hi * dir)) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e9) throw Error(ErrorCode::kNoFacet, "no boundary point near the window");
    }
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (C.contains(g.center + mid * dir) ? lo : hi) = mid;
    }
    p = g.center + lo * dir;
  }
  // Outward normal: minimize h(u) - u.p over unit u.
  auto gap = [&](const Vector& u) {
    const double hu = C.support(u);
    return std::isfinite(hu) ? hu - u.dot(p) : std::numeric_limits<double>::infinity();
  };
  Vector best = Vector::Unit(N, 0);
  double best_gap = std::numeric_limits<double>::infinity();
  const int samples = N == 2 ? 720 : 4000;
  for (int k = 0; k < samples; ++k) {
    Vector u(N);
    if (N == 2) {
      const double th = 2.0 * std::numbers::pi * k / samples;
      u << std::cos(th), std::sin(th);
    } else {
      const double z = 1.0 - (2.0 * k + 1.0) / samples;
      const double rr = std::sqrt(1.0 - z * z);
      const double th = k * std::numbers::pi * (3.0 - std::sqrt(5.0));
      u << rr * std::cos(th), rr * std::sin(th), z;
    }
    const double gv = gap(u);
    if (gv < best_gap) {
      best_gap = gv;
      best = u;
    }
  }
  double step = N == 2 ? 2.0 * std::numbers::pi / samples : 0.05;
  const Matrix I = Matrix::Identity(N, N);
  for (int it = 0; it < 200 && step > 1e-9; ++it) {
    bool moved = false;
    for (int a = 0; a < N; ++a)
      for (double sgn : {1.0, -1.0}) {
        const Vector u = (best + sgn * step * I.col(a)).normalized();
        const double gv = gap(u);
        if (gv < best_gap) {
          best_gap = gv;
          best = u;
          moved = true;
        }
      }
    if (!moved) step *= 0.5;
  }
  return {p, best};
}

DiscreteSet candidate_tangent_ball(const Grid& g, std::size_t count) {
  auto [p, n] = boundary_anchor(g);
  return candidate_tangent_ball(g, p, n, 0.0, count);
}

std::vector<Candidate> generate_candidates(const Grid& g, std::size_t count) {
  std::vector<Candidate> out;
  auto attempt = [&](const std::string& label, auto&& make) {
    try {
      out.push_back({label, make()});
    } catch (const Error&) {
      // candidate not applicable here
    }
  };
  attempt("ball", [&] { return candidate_ball(g, g.center, count); });
  if (!g.obstacle) return out;
  const int N = g.dim;
  const double v = static_cast<double>(count) * g.cell_volume();
  const double rho_half = std::pow(2.0 * v / unit_ball_volume(N), 1.0 / N);
  const double cap = 4.0 * ball_radius(v, N);

  std::vector<std::pair<Vector, Vector>> anchors;
  std::vector<std::string> names;
  if (auto P = g.obstacle->as_polyhedron()) {
    for (Eigen::Index f = 0; f < P->num_constraints(); ++f) {
      auto a = facet_anchor(*P, f, rho_half, g.center);
      if (!a || (*a - g.center).norm() > 0.95 * g.window_radius) continue;
      anchors.emplace_back(*a, P->A().row(f).transpose());
      names.push_back("f" + std::to_string(f));
    }
  } else {
    try {
      anchors.push_back(boundary_anchor(g));
      names.emplace_back("b");
    } catch (const Error&) {
    }
  }
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const auto& [p, n] = anchors[k];
    attempt("halfball:" + names[k], [&] { return candidate_halfball(g, p, n, count); });
    const double full = depth_along(*g.obstacle, p, n, cap);
    std::vector<double> depths{0.0};
    if (full > g.pitch) depths.insert(depths.end(), {0.5 * full, full});
    for (double d : depths)
      attempt("tangent:" + names[k] + ":" + std::to_string(d),
              [&] { return candidate_tangent_ball(g, p, n, d, count); });
  }
  return out;
}

}  // namespace isores
