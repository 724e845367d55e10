#include "isores/residue.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <numeric>

#include "isores/errors.hpp"
#include "isores/parallel.hpp"

namespace isores {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kConsistent: return "consistent";
    case Verdict::kInconsistent: return "inconsistent";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(RigidityVerdict v) {
  switch (v) {
    case RigidityVerdict::kHalfSpace: return "half_space";
    case RigidityVerdict::kFreeProfile: return "free_profile";
    case RigidityVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double ladder_pitch(const PitchPolicy& p, int dim, double v, double R) {
  double h = 0.0;
  if (p.fixed_pitch) {
    h = *p.fixed_pitch;
  } else {
    if (p.axis_cells < 8) throw InputError("axis_cells must be at least 8");
    h = 2.0 * R * std::pow(v, 1.0 / dim) / p.axis_cells;
  }
  return p.snap ? snap_pitch(h) : h;
}

std::vector<double> geometric_ladder(double v0, double ratio, int count) {
  if (!(v0 > 0.0) || !(ratio > 1.0) || count < 1) throw InputError("bad ladder parameters");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(v0 * std::pow(ratio, k));
  return out;
}

namespace {

std::string hex(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

std::mutex cache_mutex;
std::map<std::string, double> calibration_cache;

// Free-space solver energy on the grid a rung uses; deterministic, so cached.
double free_grid_energy(int dim, double v, double R, double h, const Vector& center,
                        const SolverConfig& base) {
  std::mutex& mutex = cache_mutex;
  std::map<std::string, double>& cache = calibration_cache;
  std::string key = std::to_string(dim) + "|" + hex(v) + "|" + hex(R) + "|" + hex(h) + "|" +
                    std::to_string(base.seed) + "|" + std::to_string(base.max_starts);
  for (int a = 0; a < center.size(); ++a) key += "|" + hex(center(a));
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  SolverConfig cfg = base;
  cfg.method = SolveMethod::kAnneal;
  cfg.diagnostics = false;
  const Grid g = build_domain(std::nullopt, dim, v, R, h, center);
  const double e = solve(g, v, cfg).energy;
  std::lock_guard lock(mutex);
  cache.emplace(key, e);
  return e;
}

}  // namespace

void clear_calibration_cache() {
  std::lock_guard lock(cache_mutex);
  calibration_cache.clear();
}

ProfileTable scan(const std::optional<ConvexBody>& body, int dim, const std::vector<double>& volumes,
                  const ScanConfig& cfg, const std::string& descriptor) {
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    if (!(volumes[i] > 0.0) || !std::isfinite(volumes[i]))
      throw InputError("volumes must be positive");
    if (i > 0 && !(volumes[i] > volumes[i - 1]))
      throw InputError("volumes must be strictly increasing");
  }
  if (body && body->dim() != dim) throw InputError("body dimension mismatch");
  const double R = cfg.window > 0.0 ? cfg.window : SolverConstants::defaults(dim).R0;
  const Vector center = cfg.center ? *cfg.center : Vector::Zero(dim);
  ProfileTable table;
  table.dim = dim;
  table.body = descriptor;
  table.rows.resize(volumes.size());
  auto run = [&](std::size_t i) {
    ScanRow& row = table.rows[i];
    const double v = volumes[i];
    row.point.v = v;
    row.point.source = ProfileSource::kGridSolver;
    try {
      row.pitch = ladder_pitch(cfg.pitch, dim, v, R);
      const Grid g = build_domain(body, dim, v, R, row.pitch, center);
      SolveReport rep = solve(g, v, cfg.solver);
      row.I_raw = rep.energy;
      if (cfg.calibrate)
        row.calibration = profile_free(v, dim) /
                          free_grid_energy(dim, v, R, row.pitch, center, cfg.solver);
      row.point.I = row.I_raw * row.calibration;
      row.point.residue = residue(v, row.point.I, dim);
      row.deficit = (1.0 + rep.deficit) * row.calibration - 1.0;
      row.negative_residue = row.point.residue <= 0.0;
      rep.set = DiscreteSet();  // tables keep diagnostics, not voxels
      row.report = std::move(rep);
    } catch (const Error& e) {
      row.error = e.what();
    }
  };
  if (cfg.concurrent)
    parallel_for(volumes.size(), 1, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) run(i);
    });
  else
    for (std::size_t i = 0; i < volumes.size(); ++i) run(i);
  return table;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("least squares needs two points");
  const auto n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InputError("least squares needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

ScalingFit fit_scaling(const std::vector<ProfilePoint>& points, int dstar, int dim, double slack) {
  ScalingFit fit;
  fit.window_lo = dstar / (2.0 * dim);
  fit.window_hi = static_cast<double>(dstar) / dim;
  std::vector<double> x, y;
  for (const auto& p : points)
    if (p.residue > 0.0 && p.v > 0.0) {
      x.push_back(std::log(p.v));
      y.push_back(std::log(p.residue));
    }
  fit.points = x.size();
  if (x.size() < 2) {
    fit.note = "fewer than two positive residues";
    return fit;
  }
  const LineFit lf = least_squares(x, y);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r2 = lf.r2;
  const double span = (*std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end())) /
                      std::log(10.0);
  if (x.size() < 5 || span < 2.0 - 1e-9) {
    fit.note = "needs at least 5 positive residues spanning 2 decades";
    fit.verdict = Verdict::kInconclusive;
    return fit;
  }
  const bool inside = fit.slope >= fit.window_lo - slack && fit.slope <= fit.window_hi + slack;
  fit.verdict = inside ? Verdict::kConsistent : Verdict::kInconsistent;
  return fit;
}

ScalingFit fit_scaling(const ProfileTable& table, int dstar) {
  std::vector<ProfilePoint> pts;
  for (const auto& r : table.rows)
    if (r.error.empty() && !r.negative_residue) pts.push_back(r.point);
  return fit_scaling(pts, dstar, table.dim);
}

std::vector<ProfilePoint> attachment_points(const CylinderBody& cyl, const std::vector<double>& radii,
                                            const AttachmentOptions& opt) {
  std::vector<ProfilePoint> out;
  for (double r : radii) {
    const AttachmentResult a = ball_attachment(cyl, r, opt);
    out.push_back({a.v, a.perimeter_bound, a.residue, ProfileSource::kConstruction});
  }
  return out;
}

SandwichReport cylinder_sandwich(const HPolyhedron& body, const std::vector<double>& volumes,
                                 const ScanConfig& cfg, double tol) {
  SandwichReport rep{structure_decompose(body), {}, {}, {}, std::nullopt, 0.0, false};
  const int N = body.dim();
  const int d = rep.decomposition.dstar;
  if (d < 1 || d > N - 2)
    throw Error(ErrorCode::kNoDecomposition, "cylinder sandwich needs 1 <= d* <= N - 2");
  const CylinderBody cyl = rep.decomposition.cylinder();
  rep.gap_reference = (d - 1.0) / N;
  rep.body_table = scan(ConvexBody(body), N, volumes, cfg, "body");
  rep.cylinder_table = scan(ConvexBody(cyl), N, volumes, cfg, "cylinder");
  rep.holds = true;
  std::vector<double> gx, gy;
  for (std::size_t i = 0; i < volumes.size(); ++i) {
    const ScanRow& a = rep.body_table.rows[i];
    const ScanRow& b = rep.cylinder_table.rows[i];
    if (!a.error.empty() || !b.error.empty()) {
      rep.holds = false;
      continue;
    }
    SandwichRow row;
    row.v = volumes[i];
    row.I_body = a.point.I;
    row.I_cylinder = b.point.I;
    row.R_body = a.point.residue;
    row.R_cylinder = b.point.residue;
    row.upper_ok = row.I_body <= row.I_cylinder * (1.0 + tol);
    row.lower_ok = row.R_body - row.R_cylinder >= -tol * row.I_cylinder;
    rep.holds = rep.holds && row.upper_ok && row.lower_ok;
    const double gap = row.R_body - row.R_cylinder;
    if (gap > 0.0) {
      gx.push_back(std::log(row.v));
      gy.push_back(std::log(gap));
    }
    rep.rows.push_back(row);
  }
  if (gx.size() >= 2) rep.gap_fit = least_squares(gx, gy);
  return rep;
}

RigidityReport rigidity_verdict(ProfileTable table, int dstar) {
  RigidityReport rep;
  rep.dstar = dstar;
  const int N = table.dim;
  std::vector<double> lx, ratios;
  for (const auto& r : table.rows) {
    if (!r.error.empty()) continue;
    const double ref = dstar >= N - 1 ? profile_halfspace(r.point.v, N) : profile_free(r.point.v, N);
    ratios.push_back(r.point.I / ref);
    lx.push_back(std::log(r.point.v));
  }
  rep.ratios = ratios;
  rep.table = std::move(table);
  if (ratios.size() < 2) {
    rep.note = "fewer than two solved rungs";
    return rep;
  }
  for (double q : ratios) rep.max_deviation = std::max(rep.max_deviation, std::abs(q - 1.0));
  rep.trend = least_squares(lx, ratios).slope;
  if (dstar >= N - 1) {
    rep.verdict = rep.max_deviation <= 0.05 ? RigidityVerdict::kHalfSpace : RigidityVerdict::kInconclusive;
    if (rep.verdict == RigidityVerdict::kInconclusive) rep.note = "ratio to I_H left the 5% band";
  } else {
    const bool top = ratios.back() >= 0.93;
    const bool rising = rep.trend > 0.0;
    rep.verdict = top && rising ? RigidityVerdict::kFreeProfile : RigidityVerdict::kInconclusive;
    if (!top) rep.note = "top-rung ratio to I_free below 0.93";
    if (!rising) rep.note = "ratio to I_free does not increase";
  }
  return rep;
}

RigidityReport rigidity_check(const ConvexBody& body, const std::vector<double>& volumes,
                              const ScanConfig& cfg) {
  const int d = dstar(body);
  return rigidity_verdict(scan(body, body.dim(), volumes, cfg, body.kind()), d);
}

}  // namespace isores
