// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Usage: acceptance [criterion numbers...]   (default: all)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "isores/asymdim.hpp"
#include "isores/errors.hpp"
#include "isores/linalg.hpp"
#include "isores/profiles.hpp"
#include "isores/report_io.hpp"
#include "isores/residue.hpp"
#include "isores/solver.hpp"
#include "oracles.hpp"

using namespace isores;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double R0(int N) { return SolverConstants::defaults(N).R0; }

// span(e1) + [0,1]^2
ConvexBody line_cylinder() {
  Matrix Z = Matrix::Zero(3, 1);
  Z(0, 0) = 1;
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  return ConvexBody(CylinderBody(Z, HPolyhedron(A, oracle::vec({1, 0, 1, 0}))));
}

// Pinned settings shared by the residue ladder and its rerun.
const std::vector<double>& residue_ladder() {
  static const std::vector<double> v = geometric_ladder(16.0, 2.0, 8);
  return v;
}

ScanConfig residue_config() {
  ScanConfig cfg;
  cfg.pitch.axis_cells = 192;
  cfg.solver.seed = 0;
  return cfg;
}

const ProfileTable& residue_table() {
  static const ProfileTable t = scan(line_cylinder(), 3, residue_ladder(), residue_config(), "line-cylinder");
  return t;
}

Outcome c1_halfplane() {
  const ConvexBody H(oracle::lower_halfspace(2));
  double worst = 0.0, slowest = 0.0;
  for (double v : {1.0, 4.0, 16.0}) {
    const auto t0 = Clock::now();
    const double R = R0(2);
    const double h = snap_pitch(2 * R * std::sqrt(v) / 512);
    const Grid g = build_domain(H, 2, v, R, h);
    const SolveReport r = solve(g, v);
    slowest = std::max(slowest, seconds(t0));
    worst = std::max(worst, std::abs(r.energy / oracle::halfspace_profile(v, 2) - 1.0));
  }
  return {worst <= 0.03 && slowest <= 60.0,
          "max |I/I_H - 1| = " + fmt("%.4f", worst) + " (<= 0.03), max time " + fmt("%.1f", slowest) +
              " s (<= 60 s)"};
}

Outcome c2_free() {
  double worst = 0.0, worst_a = 0.0;
  for (int N : {2, 3}) {
    const double v = 1.0;
    const double h = 2 * R0(N) / (N == 2 ? 512 : 192);
    const Grid g = build_domain(std::nullopt, N, v, R0(N), h);
    const SolveReport r = solve(g, v);
    worst = std::max(worst, std::abs(r.energy / oracle::free_profile(v, N) - 1.0));
    worst_a = std::max(worst_a, r.asymmetry);
  }
  return {worst <= 0.03 && worst_a <= 0.05,
          "max |I/I_free - 1| = " + fmt("%.4f", worst) + " (<= 0.03), max A = " + fmt("%.4f", worst_a) +
              " (<= 0.05)"};
}

Outcome c3_rigidity() {
  const auto t0 = Clock::now();
  ScanConfig cfg;
  cfg.pitch.axis_cells = 192;
  const RigidityReport slab = rigidity_check(ConvexBody(oracle::slab_product(3, 2)), {50, 200, 800, 3200}, cfg);
  const RigidityReport cube = rigidity_check(ConvexBody(oracle::cube(3)), {1, 8, 64, 512}, cfg);
  const double t = seconds(t0);
  bool monotone = true;
  for (std::size_t i = 1; i < cube.ratios.size(); ++i) monotone = monotone && cube.ratios[i] > cube.ratios[i - 1];
  const double top = cube.ratios.empty() ? 0.0 : cube.ratios.back();
  const bool ok = slab.dstar == 2 && cube.dstar == 0 && slab.ratios.size() == 4 && cube.ratios.size() == 4 &&
                  slab.max_deviation <= 0.05 && top >= 0.93 && monotone && t <= 1800.0;
  std::string ratios;
  for (double q : cube.ratios) ratios += fmt(" %.3f", q);
  return {ok, "slab max |I/I_H - 1| = " + fmt("%.4f", slab.max_deviation) + " (<= 0.05); cube I/I_free" + ratios +
                  (monotone ? " increasing" : " not increasing") + ", top >= 0.93; time " + fmt("%.0f", t) +
                  " s (<= 1800 s)"};
}

Outcome c4_residue() {
  const ProfileTable& t = residue_table();
  const ScalingFit f = fit_scaling(t, 1);
  std::size_t failed = 0;
  for (const auto& r : t.rows) failed += !r.error.empty();
  const bool ok = failed == 0 && f.points == 8 && f.slope >= 1.0 / 6 - 0.06 && f.slope <= 1.0 / 3 + 0.06 &&
                  f.r2 >= 0.9;
  return {ok, "slope " + fmt("%.4f", f.slope) + " in [0.1067, 0.3933], r2 " + fmt("%.4f", f.r2) +
                  " (>= 0.9), positive rungs " + std::to_string(f.points) + "/8"};
}

Outcome c5_construction() {
  const auto t0 = Clock::now();
  const CylinderBody cyl = std::get<CylinderBody>(line_cylinder().rep());
  const auto pts = attachment_points(cyl, {1e2, 1e3, 1e4});
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(std::log(p.v));
    y.push_back(std::log(p.residue));
  }
  const LineFit f = least_squares(x, y);
  const double t = seconds(t0);
  return {std::abs(f.slope - 1.0 / 6) <= 0.03 && t <= 60.0,
          "slope " + fmt("%.4f", f.slope) + " (1/6 +- 0.03), time " + fmt("%.1f", t) + " s (<= 60 s)"};
}

Outcome c6_deficit() {
  const ProfileTable& t = residue_table();
  std::vector<double> x, y;
  bool bound = true;
  double worst = 0.0;
  for (const auto& r : t.rows) {
    if (!r.error.empty() || !r.report) return {false, "ladder rung failed: " + r.error};
    const double A = r.report->asymmetry;
    const double d = r.deficit;
    bound = bound && A * A <= 10.0 * d;
    worst = std::max(worst, A * A / std::max(d, 1e-300));
    if (d > 0.0) {
      x.push_back(std::log(r.point.v));
      y.push_back(std::log(d));
    }
  }
  if (x.size() < 2) return {false, "fewer than two positive deficits"};
  const LineFit f = least_squares(x, y);
  return {f.slope <= -1.0 / 3 + 0.1 && bound,
          "deficit exponent " + fmt("%.4f", f.slope) + " (<= -0.2333), max A^2/deficit " + fmt("%.3f", worst) +
              " (<= 10)"};
}

struct CorpusBody {
  std::string name;
  HPolyhedron body;
  int dstar;
};

HPolyhedron rows(std::initializer_list<std::initializer_list<double>> A, std::initializer_list<double> b) {
  const auto m = static_cast<Eigen::Index>(A.size());
  const auto n = static_cast<Eigen::Index>(A.begin()->size());
  Matrix M(m, n);
  Eigen::Index i = 0;
  for (const auto& r : A) {
    Eigen::Index j = 0;
    for (double x : r) M(i, j++) = x;
    M.row(i).normalize();
    ++i;
  }
  Vector bv(m);
  i = 0;
  for (double x : b) bv(i++) = x;
  // rows were normalized, rescale b to match
  i = 0;
  for (const auto& r : A) {
    double nrm = 0.0;
    for (double x : r) nrm += x * x;
    bv(i) /= std::sqrt(nrm);
    ++i;
  }
  return HPolyhedron(M, bv);
}

std::vector<CorpusBody> corpus() {
  return {
      {"cube", oracle::cube(3), 0},
      {"simplex", rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 1, 1}}, {0, 0, 0, 1}), 0},
      {"strip R x [0,1]", oracle::slab_product(2, 1), 1},
      {"R x square", oracle::slab_product(3, 1), 1},
      {"slab R^2 x [0,1]", oracle::slab_product(3, 2), 2},
      {"half-space", oracle::lower_halfspace(3), 3},
      {"orthant", oracle::orthant(3), 3},
      {"planar wedge", rows({{0, -1}, {-1, 1}}, {0, 0}), 2},
      {"wedge x [0,1]", rows({{0, -1, 0}, {-1, 1, 0}, {0, 0, 1}, {0, 0, -1}}, {0, 0, 1, 0}), 2},
      {"R x triangle", rows({{0, -1, 0}, {0, 0, -1}, {0, 1, 1}}, {0, 0, 1}), 1},
      {"R^2 x square", oracle::slab_product(4, 2), 2},
      {"quadrant x square", rows({{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}},
                                 {0, 0, 1, 0, 1, 0}), 2},
  };
}

Outcome c7_structure() {
  int matched = 0, recursions = 0, recursion_ok = 0;
  std::string misses;
  for (const CorpusBody& c : corpus()) {
    const int d = dstar_polyhedral(c.body);
    if (d == c.dstar) ++matched;
    else misses += " " + c.name;
    const int N = c.body.dim();
    if (c.dstar >= 1 && c.dstar <= N - 1) {
      ++recursions;
      const Vector z = dstar_polyhedral_report(c.body).recession_span.col(0);
      const Matrix perp = complement_basis(z, N);
      if (dstar(project(ConvexBody(c.body), perp)) == c.dstar - 1) ++recursion_ok;
    }
  }
  const int total = static_cast<int>(corpus().size());
  return {matched == total && recursion_ok == recursions,
          "d* exact on " + std::to_string(matched) + "/" + std::to_string(total) + " bodies" + misses +
              "; projection recursion " + std::to_string(recursion_ok) + "/" + std::to_string(recursions)};
}

Outcome c8_oracle() {
  bool ok = true;
  std::string detail;
  for (int N : {2, 3}) {
    for (int len : {4, 5, 6}) {
      ScalingSchedule s;
      s.n_values.clear();
      for (int k = 1; k <= len; ++k) s.n_values.push_back(std::pow(10.0, k));
      const OracleDstar r = dstar_oracle(ConvexBody(make_paraboloid(N)), s);
      bool stable = false;
      for (const auto& w : r.witnesses) stable = stable || w.stable;
      ok = ok && r.dstar == N && stable;
      detail += " N=" + std::to_string(N) + "/len " + std::to_string(len) + ": " + std::to_string(r.dstar) +
                (stable ? "" : " unstable");
    }
  }
  return {ok, "paraboloid d* = N with stable witness:" + detail};
}

Outcome c9_sandwich() {
  // |y| <= 1, |z| <= 1, z <= x: a square prism truncated by a plane, d* = 1
  const HPolyhedron body = rows({{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {-1, 0, 1}}, {1, 1, 1, 1, 0});
  ScanConfig cfg;
  cfg.pitch.axis_cells = 192;
  const SandwichReport rep = cylinder_sandwich(body, {16, 64, 256, 1024}, cfg, 0.03);
  double worst_upper = -1e9, worst_lower = 1e9;
  for (const auto& r : rep.rows) {
    worst_upper = std::max(worst_upper, r.I_body / r.I_cylinder - 1.0);
    worst_lower = std::min(worst_lower, (r.R_body - r.R_cylinder) / r.I_cylinder);
  }
  return {rep.holds && rep.rows.size() == 4,
          "max I_C/I_cyl - 1 = " + fmt("%.4f", worst_upper) + " (<= 0.03), min (R_C - R_cyl)/I_cyl = " +
              fmt("%.4f", worst_lower) + " (>= -0.03), rungs " + std::to_string(rep.rows.size()) + "/4"};
}

Outcome c10_determinism() {
  const std::string first = table_to_csv(residue_table());
  clear_calibration_cache();
  const ProfileTable again = scan(line_cylinder(), 3, residue_ladder(), residue_config(), "line-cylinder");
  const std::string second = table_to_csv(again);
  return {first == second, std::string("criterion 4 rerun CSV ") + (first == second ? "byte-identical" : "differs") +
                               " (" + std::to_string(first.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"closed-form half-plane profile", c1_halfplane},
      {"free-space sanity", c2_free},
      {"rigidity dichotomy", c3_rigidity},
      {"residue scaling window", c4_residue},
      {"construction certificate", c5_construction},
      {"deficit decay", c6_deficit},
      {"structure theory corpus", c7_structure},
      {"oracle d* of the paraboloid", c8_oracle},
      {"cylinder sandwich", c9_sandwich},
      {"determinism", c10_determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                seconds(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
