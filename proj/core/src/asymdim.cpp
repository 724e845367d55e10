#include "isores/asymdim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "isores/errors.hpp"
#include "isores/hausdorff.hpp"
#include "isores/linalg.hpp"

namespace isores {

PolyhedralDstar dstar_polyhedral_report(const HPolyhedron& P, const Tolerances& tol) {
  PolyhedralDstar out;
  const int N = P.dim();
  const auto& rays = P.generators().rays;
  out.recession_span = Matrix(N, 0);
  if (rays.empty()) return out;
  Matrix R(N, static_cast<Eigen::Index>(rays.size()));
  for (std::size_t j = 0; j < rays.size(); ++j) R.col(static_cast<Eigen::Index>(j)) = rays[j];
  Eigen::JacobiSVD<Matrix> svd(R, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  for (Eigen::Index i = 0; i < s.size(); ++i) out.singular_values.push_back(s(i));
  const double cutoff = tol.rank * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  out.dstar = rank;
  if (rank < s.size()) {
    const double below = s(rank);
    if (below > 0.0 && s(rank - 1) / below < 10.0) {
      out.rank_ambiguous = true;
      out.warnings.push_back("singular value gap below 10x at the rank cutoff");
    }
  }
  out.recession_span = canonical_basis(svd.matrixU().leftCols(rank), N);
  return out;
}

int dstar_polyhedral(const HPolyhedron& P, const Tolerances& tol) {
  return dstar_polyhedral_report(P, tol).dstar;
}

namespace {

std::vector<Vector> probe_directions(int dim, int count, std::uint64_t seed) {
  std::vector<Vector> dirs;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < count; ++k) {
    Vector u(dim);
    for (int i = 0; i < dim; ++i) u(i) = gauss(rng);
    dirs.push_back(u.normalized());
  }
  return dirs;
}

bool is_recession_direction(const ConvexBody& body, const Vector& x0, const Vector& u) {
  for (double t : {1e1, 1e3, 1e5, 1e7})
    if (!body.contains(Vector(x0 + t * u))) return false;
  return true;
}

Vector find_recession_direction(const ConvexBody& body, const Vector& x0,
                                const std::vector<Vector>& dirs,
                                const std::vector<double>& supports) {
  const int N = body.dim();
  if (const auto* o = std::get_if<SupportOracle>(&body.rep()); o && o->recession_hint)
    return o->recession_hint->normalized();
  if (auto P = body.as_polyhedron()) {
    const auto& rays = P->generators().rays;
    Vector sum = Vector::Zero(N);
    for (const Vector& r : rays) sum += r;
    if (sum.norm() > 1e-9) return sum.normalized();
    return rays.front();
  }
  Vector avg = Vector::Zero(N);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (std::isinf(supports[i])) avg += dirs[i];
  if (avg.norm() > 1e-6 && is_recession_direction(body, x0, avg.normalized()))
    return avg.normalized();
  for (int i = 0; i < N; ++i)
    for (double s : {1.0, -1.0}) {
      const Vector e = s * Vector::Unit(N, i);
      if (is_recession_direction(body, x0, e)) return e;
    }
  for (std::size_t i = 0; i < dirs.size(); ++i)
    if (std::isinf(supports[i]) && is_recession_direction(body, x0, dirs[i])) return dirs[i];
  throw Error(ErrorCode::kNoStableLimit, "could not locate a recession direction");
}

// sup{t in [0,1] : t d in K} for K convex containing 0.
double radial(const Membership& in_k, const Vector& d, int steps) {
  if (in_k(d)) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (lo + hi);
    if (in_k(Vector(mid * d))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

OracleDstar dstar_oracle(const ConvexBody& body, const ScalingSchedule& schedule) {
  const int N = body.dim();
  OracleDstar out;
  std::vector<Vector> dirs = probe_directions(N, schedule.directions, schedule.seed);
  for (int i = 0; i < N; ++i) {
    dirs.push_back(Vector::Unit(N, i));
    dirs.push_back(-Vector::Unit(N, i));
  }
  std::vector<double> supports(dirs.size());
  bool any_infinite = false;
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    supports[i] = body.support(dirs[i]);
    any_infinite = any_infinite || std::isinf(supports[i]);
  }
  if (!any_infinite) {
    out.bounded = true;
    out.confidence = "bounded";
    return out;
  }
  const Vector x0 = body.interior_point();
  if (!body.contains(x0)) throw InputError("body interior point is not contained in the body");
  const Vector z = find_recession_direction(body, x0, dirs, supports);
  out.direction = z;
  out.base_point = x0;

  std::vector<Vector> probes = dirs;
  probes.push_back(z);
  probes.push_back(-z);

  int best = -1;
  std::ostringstream diag;
  for (double gamma : schedule.gammas) {
    ScheduleWitness w;
    w.gamma = gamma;
    for (double n : schedule.n_values) {
      const double lambda = std::pow(n, -gamma);
      const Vector xn = x0 + n * z;
      const Membership in_k = [&body, &xn, lambda](const Vector& y) {
        return body.contains(Vector(xn + y / lambda));
      };
      std::vector<Vector> pts;
      pts.reserve(probes.size());
      for (const Vector& d : probes) pts.push_back(radial(in_k, d, schedule.bisection_steps) * d);
      Vector mean = Vector::Zero(N);
      for (const Vector& p : pts) mean += p;
      mean /= static_cast<double>(pts.size());
      Matrix M = Matrix::Zero(N, N);
      for (const Vector& p : pts) M += (p - mean) * (p - mean).transpose();
      Eigen::SelfAdjointEigenSolver<Matrix> eig(M);
      std::vector<double> extents;
      for (int i = N - 1; i >= 0; --i) {
        const Vector e = eig.eigenvectors().col(i);
        double lo = 0.0, hi = 0.0;
        for (const Vector& p : pts) {
          lo = std::min(lo, p.dot(e));
          hi = std::max(hi, p.dot(e));
        }
        const double radial_width = radial(in_k, e, schedule.bisection_steps) +
                                    radial(in_k, Vector(-e), schedule.bisection_steps);
        extents.push_back(std::max(hi - lo, radial_width));
      }
      std::sort(extents.rbegin(), extents.rend());
      int count = 0;
      for (double e : extents)
        if (e > schedule.extent_tolerance) ++count;
      w.n_values.push_back(n);
      w.counts.push_back(count);
      w.extents.push_back(extents);
    }
    const std::size_t k = w.counts.size();
    w.stable = k >= 3 && w.counts[k - 1] == w.counts[k - 2] && w.counts[k - 2] == w.counts[k - 3];
    diag << " gamma=" << gamma << " counts=";
    for (int c : w.counts) diag << c << ' ';
    if (w.stable) best = std::max(best, w.counts.back());
    out.witnesses.push_back(std::move(w));
  }
  if (best < 0) throw Error(ErrorCode::kNoStableLimit, "scaling counts oscillate:" + diag.str());
  for (const auto& w : out.witnesses)
    if (!w.stable)
      out.warnings.push_back("schedule gamma=" + std::to_string(w.gamma) + " did not stabilize");
  out.dstar = best;
  out.confidence = "stable";
  return out;
}

int dstar(const ConvexBody& body) {
  if (auto P = body.as_polyhedron()) return dstar_polyhedral(*P);
  return dstar_oracle(body).dstar;
}

CylinderBody StructureDecomposition::cylinder() const {
  return CylinderBody(z_basis, cross_section, perp_basis);
}

StructureDecomposition structure_decompose(const HPolyhedron& P, std::uint64_t seed) {
  const int N = P.dim();
  const PolyhedralDstar rep = dstar_polyhedral_report(P);
  if (rep.dstar == 0 || rep.dstar == N)
    throw Error(ErrorCode::kNoDecomposition,
                "d* = " + std::to_string(rep.dstar) + " admits no nontrivial decomposition");
  const Matrix Z = rep.recession_span;
  const Matrix perp = complement_basis(Z, N);
  ConvexBody D = project(ConvexBody(P), perp);
  HPolyhedron Dp = *D.as_polyhedron();
  StructureDecomposition out{rep.dstar, Z, perp, Dp};
  out.bounded = !Dp.is_whole_space() && Dp.generators().bounded();

  const GeneratorRep& g = P.generators();
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  out.containment_samples = 1000;
  for (int s = 0; s < out.containment_samples; ++s) {
    Vector x = Vector::Zero(N);
    double total = 0.0;
    for (const Vector& v : g.vertices) {
      const double w = expo(rng);
      x += w * v;
      total += w;
    }
    x /= total;
    for (const Vector& r : g.rays) x += 10.0 * expo(rng) * r;
    if (!Dp.contains(Vector(perp.transpose() * x))) ++out.containment_failures;
  }
  return out;
}

namespace {

void for_each_probe(int dim, double R, double h, const std::function<void(const Vector&)>& fn) {
  const int half = static_cast<int>(std::floor(R / h));
  const int side = 2 * half + 1;
  const double total_d = std::pow(static_cast<double>(side), dim);
  if (total_d > static_cast<double>(1 << 25))
    throw Error(ErrorCode::kResolutionOverflow, "probe grid too large");
  const std::size_t total = static_cast<std::size_t>(total_d);
  Vector p(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int ax = 0; ax < dim; ++ax) {
      p(ax) = h * (static_cast<double>(rem % static_cast<std::size_t>(side)) - half);
      rem /= static_cast<std::size_t>(side);
    }
    if (p.norm() <= R) fn(p);
  }
}

}  // namespace

SliceReport slice_check(const ConvexBody& body, const Vector& z, const std::vector<double>& t_values,
                        double R, double h) {
  const int N = body.dim();
  if (z.size() != N) throw InputError("direction has the wrong dimension");
  if (std::abs(z.norm() - 1.0) > 1e-12) throw InputError("z must be a unit vector");
  for (std::size_t i = 1; i < t_values.size(); ++i)
    if (!(t_values[i] > t_values[i - 1])) throw InputError("t_values must be increasing");
  Matrix zm(N, 1);
  zm.col(0) = z;
  const Matrix perp = complement_basis(zm, N);
  const ConvexBody proj = project(body, perp);
  const Membership in_proj = [&proj](const Vector& y) { return proj.contains(y); };

  SliceReport out;
  auto slice = [&](double t) {
    return Membership([&body, &perp, &z, t](const Vector& y) {
      return body.contains(Vector(t * z + perp * y));
    });
  };
  double prev_hd = kInf;
  const double tol = h * std::sqrt(static_cast<double>(N - 1));
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    SliceRow row;
    row.t = t_values[i];
    const Membership in_t = slice(row.t);
    const Membership in_next = i + 1 < t_values.size() ? slice(t_values[i + 1]) : Membership{};
    for_each_probe(N - 1, R, h, [&](const Vector& y) {
      if (!in_t(y)) return;
      ++row.probe_points;
      if (in_next && !in_next(y)) ++row.nested_violations;
    });
    if (row.probe_points == 0) {
      row.empty = true;
      out.notes.push_back("slice at t=" + std::to_string(row.t) + " is empty; skipped");
      out.rows.push_back(row);
      continue;
    }
    row.hausdorff_to_projection =
        local_hausdorff(in_t, in_proj, N - 1, R, h, Vector::Zero(N - 1));
    if (row.nested_violations > 0) out.nested = false;
    if (row.hausdorff_to_projection > prev_hd + tol) out.hausdorff_nonincreasing = false;
    prev_hd = row.hausdorff_to_projection;
    out.final_hausdorff = row.hausdorff_to_projection;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace isores
