#include "isores/profiles.hpp"

#include <cmath>
#include <numbers>

#include "isores/errors.hpp"

namespace isores {

std::string to_string(ProfileSource s) {
  switch (s) {
    case ProfileSource::kClosedForm: return "closed_form";
    case ProfileSource::kGridSolver: return "grid_solver";
    case ProfileSource::kConstruction: return "construction";
  }
  return "unknown";
}

double unit_ball_volume(int N) {
  if (N < 1 || N > 8) throw InputError("unit_ball_volume: N must be in [1, 8]");
  const double h = 0.5 * N;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

double profile_free(double v, int N) {
  if (!(v > 0.0)) throw InputError("volume must be positive");
  return N * std::pow(unit_ball_volume(N), 1.0 / N) * std::pow(v, (N - 1.0) / N);
}

double profile_halfspace(double v, int N) {
  if (!(v > 0.0)) throw InputError("volume must be positive");
  return N * std::pow(0.5 * unit_ball_volume(N), 1.0 / N) * std::pow(v, (N - 1.0) / N);
}

double residue(double v, double I, int N) { return profile_free(v, N) - I; }

double ball_radius(double v, int N) {
  if (!(v > 0.0)) throw InputError("volume must be positive");
  return std::pow(v / unit_ball_volume(N), 1.0 / N);
}

SolverConstants SolverConstants::defaults(int dim) {
  SolverConstants c;
  c.dim = dim;
  const double w = unit_ball_volume(dim);
  c.R0 = std::pow(2.0 / w, 1.0 / dim) + 1.0;
  c.Lambda0 = 4.0 * dim;
  c.c0 = 0.1 * w;
  return c;
}

void SolverConstants::validate() const {
  if (dim < 2 || dim > 3) throw InputError("solver dimension must be 2 or 3");
  for (double x : {R0, Lambda0, I0, d0, r0, c0})
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("solver constants must be positive");
}

std::pair<Vector, double> inscribed_cube(const HPolyhedron& D) {
  const Eigen::Index m = D.dim();
  Matrix L(D.num_constraints(), m + 1);
  for (Eigen::Index i = 0; i < D.num_constraints(); ++i) {
    L.row(i).head(m) = D.A().row(i);
    L(i, m) = D.A().row(i).lpNorm<1>();
  }
  Vector c = Vector::Zero(m + 1);
  c(m) = 1.0;
  const dd::LpResult res = dd::maximize(L, D.b(), c);
  if (res.status != dd::LpStatus::kOptimal || !(res.value > 0.0))
    throw Error(ErrorCode::kCubeDetection,
                "no inscribed cube found in the cross-section; pass alpha explicitly");
  return {res.argmax.head(m), res.value};
}

namespace {

// Lower and upper sums for the area of the graph x_N = -r + sqrt(r^2 - rho^2)
// over {|x'| <= s, y' in [-alpha, alpha]^my, rho^2 = |x'|^2 + |y'|^2 <= rho2max},
// with x' in R^k integrated in radial shells.
std::pair<double, double> hidden_cap_area(int k, int my, double r, double alpha, double pitch,
                                          std::size_t max_cells) {
  const double rho2max = 2.0 * r * alpha - alpha * alpha;
  const double smax = std::sqrt(rho2max);
  const auto ns = static_cast<std::size_t>(std::ceil(smax / pitch));
  const auto ny = static_cast<std::size_t>(std::ceil(alpha / pitch - 1e-9));
  std::size_t ycells = 1;
  for (int i = 0; i < my; ++i) ycells *= ny;
  if (static_cast<double>(ns) * static_cast<double>(ycells) > static_cast<double>(max_cells))
    throw Error(ErrorCode::kResolutionOverflow, "hidden-area quadrature needs too many cells");
  const double wk = unit_ball_volume(k);
  const double dy = alpha / static_cast<double>(ny);
  const double ycell_volume = std::pow(dy, my) * std::pow(2.0, my);  // symmetric orthants

  // |y'|^2 ranges for each y cell (min corner, max corner) in [0, alpha]^my.
  std::vector<double> y2min(ycells), y2max(ycells);
  for (std::size_t idx = 0; idx < ycells; ++idx) {
    std::size_t rem = idx;
    double lo = 0.0, hi = 0.0;
    for (int a = 0; a < my; ++a) {
      const auto j = static_cast<double>(rem % ny);
      rem /= ny;
      lo += (j * dy) * (j * dy);
      hi += ((j + 1.0) * dy) * ((j + 1.0) * dy);
    }
    y2min[idx] = lo;
    y2max[idx] = hi;
  }
  double lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const double s0 = static_cast<double>(i) * pitch;
    const double s1 = std::min(smax, s0 + pitch);
    const double shell = wk * (std::pow(s1, k) - std::pow(s0, k));
    double lo_row = 0.0, hi_row = 0.0;
    for (std::size_t idx = 0; idx < ycells; ++idx) {
      const double rho2_lo = s0 * s0 + y2min[idx];
      if (rho2_lo > rho2max) continue;
      const double rho2_hi = s1 * s1 + y2max[idx];
      const double f_lo = r / std::sqrt(r * r - rho2_lo);
      const double f_hi = r / std::sqrt(r * r - std::min(rho2_hi, rho2max));
      hi_row += f_hi;
      if (rho2_hi <= rho2max && s0 + pitch <= smax) lo_row += f_lo;
    }
    lower += shell * lo_row;
    upper += shell * hi_row;
  }
  return {lower * ycell_volume, upper * ycell_volume};
}

// Midpoint rule for |B_r(c - r e_m) ∩ (Z + D)| = ∫_D omega_k (r^2 - |y - b|^2)_+^{k/2} dy.
double displaced_volume(const HPolyhedron& D, int k, const Vector& c, double r, double pitch,
                        std::size_t max_cells) {
  const int m = D.dim();
  Vector lo = Vector::Constant(m, kInf), hi = Vector::Constant(m, -kInf);
  for (const Vector& v : D.generators().vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  std::vector<std::size_t> n(static_cast<std::size_t>(m));
  double total = 1.0;
  for (int a = 0; a < m; ++a) {
    n[static_cast<std::size_t>(a)] =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((hi(a) - lo(a)) / pitch)));
    total *= static_cast<double>(n[static_cast<std::size_t>(a)]);
  }
  if (total > static_cast<double>(max_cells))
    throw Error(ErrorCode::kResolutionOverflow, "displaced-volume quadrature needs too many cells");
  const double wk = unit_ball_volume(k);
  const auto cells = static_cast<std::size_t>(total);
  double cell_volume = 1.0;
  Vector step(m);
  for (int a = 0; a < m; ++a) {
    step(a) = (hi(a) - lo(a)) / static_cast<double>(n[static_cast<std::size_t>(a)]);
    cell_volume *= step(a);
  }
  double sum = 0.0;
  Vector y(m);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    std::size_t rem = idx;
    for (int a = 0; a < m; ++a) {
      const auto na = n[static_cast<std::size_t>(a)];
      y(a) = lo(a) + (static_cast<double>(rem % na) + 0.5) * step(a);
      rem /= na;
    }
    if (!D.contains(y)) continue;
    const Vector d = y - c;
    const double chord2 = -d.squaredNorm() - 2.0 * r * d(m - 1);
    if (chord2 <= 0.0) continue;
    sum += wk * std::pow(chord2, 0.5 * k);
  }
  return sum * cell_volume;
}

}  // namespace

AttachmentResult ball_attachment(const CylinderBody& cyl, double r, const AttachmentOptions& opt) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("radius must be positive");
  const int N = cyl.dim();
  const int k = cyl.axis_dim();
  const HPolyhedron& D = cyl.cross_section();
  AttachmentResult out;
  out.r = r;
  if (opt.alpha) {
    if (!(*opt.alpha > 0.0)) throw InputError("alpha must be positive");
    out.alpha = *opt.alpha;
    out.cube_center = chebyshev_center(D.A(), D.b(), 1e6).first;
  } else {
    auto [c, a] = inscribed_cube(D);
    out.cube_center = c;
    out.alpha = a;
  }
  const double alpha = out.alpha;
  if (!(2.0 * r * alpha - alpha * alpha > 0.0)) throw InputError("radius too small for the cube");
  const double pitch = alpha * opt.pitch_fraction;

  auto [lower, upper] = hidden_cap_area(k, N - 1 - k, r, alpha, pitch, opt.max_cells);
  out.hidden_area = lower;
  out.hidden_area_upper = upper;

  out.displaced = displaced_volume(D, k, out.cube_center, r, pitch, opt.max_cells);
  const double coarse = displaced_volume(D, k, out.cube_center, r, 2.0 * pitch, opt.max_cells);
  out.displaced_error = std::abs(out.displaced - coarse);

  const double w = unit_ball_volume(N);
  const double sphere = N * w * std::pow(r, N - 1);
  out.v = w * std::pow(r, N) - out.displaced;
  out.perimeter_bound = sphere - out.hidden_area;
  const double q = out.displaced / (w * std::pow(r, N));
  out.residue = sphere * std::expm1((N - 1.0) / N * std::log1p(-q)) + out.hidden_area;
  return out;
}

}  // namespace isores
