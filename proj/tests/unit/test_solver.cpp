#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isores/candidates.hpp"
#include "isores/diagnostics.hpp"
#include "isores/errors.hpp"
#include "isores/perimeter.hpp"
#include "isores/report_io.hpp"
#include "isores/residue.hpp"
#include "isores/solver.hpp"
#include "oracles.hpp"

using namespace isores;
using oracle::vec;

namespace {

double R0(int N) { return SolverConstants::defaults(N).R0; }

Grid half_plane_grid(double v, double R, double h) {
  return build_domain(ConvexBody(oracle::lower_halfspace(2)), 2, v, R, h);
}

template <class Pred>
DiscreteSet cells_where(const Grid& g, Pred pred) {
  DiscreteSet E(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.is_free(i) && pred(g.cell_center(i))) E.insert(i);
  return E;
}

std::size_t surface_cells(const DiscreteSet& E, const Grid& g) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!E.in[i]) continue;
    const auto c = g.coords(i);
    bool edge = false;
    for (int a = 0; a < g.dim && !edge; ++a)
      for (int s : {-1, 1}) {
        auto d = c;
        d[static_cast<std::size_t>(a)] += s;
        if (!E.in[g.index(d[0], d[1], d[2])]) edge = true;
      }
    n += edge;
  }
  return n;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("method names") {
  CHECK(parse_method("relax") == SolveMethod::kRelax);
  CHECK(to_string(SolveMethod::kBoth) == "both");
  CHECK_THROWS_AS(parse_method("newton"), InputError);
}

TEST_CASE("free disk") {
  const Grid g = build_domain(std::nullopt, 2, 1.0, R0(2), 2 * R0(2) / 96);
  const SolveReport r = solve(g, 1.0);
  CHECK(r.energy == doctest::Approx(oracle::kFree2v1).epsilon(0.03));
  CHECK(r.asymmetry <= 0.05);
  CHECK(r.components == 1);
  CHECK(r.obstacle_perimeter == 0.0);
}

TEST_CASE("half-disk on a line") {
  const double h = snap_pitch(2 * R0(2) / 96);
  const Grid g = half_plane_grid(1.0, R0(2), h);
  const SolveReport r = solve(g, 1.0);
  CHECK(r.energy == doctest::Approx(oracle::kHalf2v1).epsilon(0.03));
  CHECK(r.energy >= 0.97 * oracle::kHalf2v1);
  CHECK(r.obstacle_perimeter <= r.energy + 0.02 * r.energy);
  CHECK(r.asymmetry >= 0.0);
  CHECK(r.asymmetry <= 2.0);
  CHECK(r.deficit >= -0.02);
  // volume fidelity
  CHECK(std::abs(r.v_achieved - 1.0) <= std::max(h * h * surface_cells(r.set, g), 0.005));
  // the relaxed energy is a lower-bound proxy
  REQUIRE(r.relaxed_energy);
  CHECK(*r.relaxed_energy <= r.energy);
}

TEST_CASE("identical seed and config give identical reports") {
  const Grid g = half_plane_grid(1.0, R0(2), snap_pitch(2 * R0(2) / 64));
  SolverConfig cfg;
  cfg.seed = 42;
  const SolveReport a = solve(g, 1.0, cfg);
  const SolveReport b = solve(g, 1.0, cfg);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(a.set == b.set);
}

TEST_CASE("a larger window does not raise the energy") {
  const double h = 1.0 / 32;
  const SolveReport r1 = solve(half_plane_grid(1.0, R0(2), h), 1.0);
  const SolveReport r2 = solve(half_plane_grid(1.0, 2 * R0(2), h), 1.0);
  CHECK(r2.energy <= 1.01 * r1.energy);
}

TEST_CASE("scaling covariance on a rescaled grid") {
  const double h = 1.0 / 32, lam = 2.0;
  const SolveReport a = solve(half_plane_grid(1.0, R0(2), h), 1.0);
  const SolveReport b = solve(half_plane_grid(lam * lam, R0(2), lam * h), lam * lam);
  CHECK(b.energy == doctest::Approx(lam * a.energy).epsilon(0.02));
}

TEST_CASE("solve errors") {
  const Grid g = build_domain(std::nullopt, 2, 1.0, R0(2), 0.05);
  try {
    solve(g, 1e-5);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySet);
  }
  CHECK_THROWS_AS(solve(g, -1.0), InputError);
}

}  // TEST_SUITE

TEST_SUITE("candidates") {

TEST_CASE("half-ball needs a facet") {
  const Grid para = build_domain(ConvexBody(make_paraboloid(3)), 3, 1.0, R0(3), 0.1,
                                 vec({0, 0, 0.5}));
  try {
    candidate_halfball(para, vec({0, 0, 0}), vec({0, 0, -1}), 100);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoFacet);
  }
  const Grid slab = build_domain(ConvexBody(oracle::slab_product(3, 2)), 3, 1.0, R0(3), 0.1);
  const DiscreteSet hb = candidate_halfball(slab, vec({0, 0, 1}), vec({0, 0, 1}), 500);
  CHECK(hb.count == 500);
  try {
    candidate_halfball(slab, vec({0, 0, 1}), vec({0, 0, 1}), slab.free_cells + 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVolumeOverflow);
  }
}

TEST_CASE("tangent ball") {
  Matrix Z = Matrix::Zero(3, 1);
  Z(0, 0) = 1;
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  const ConvexBody cyl(CylinderBody(Z, HPolyhedron(A, vec({1, 0, 1, 0}))));
  const double v = 1000.0;
  const Grid g = build_domain(cyl, 3, v, R0(3), snap_pitch(2 * R0(3) * 10 / 64));
  const std::size_t count = cell_count(g, v);
  const DiscreteSet E = candidate_tangent_ball(g, count);
  CHECK(std::abs(E.volume(g) - v) <= std::pow(g.pitch, 3));

  // bounded obstacle far outside the window: a plain ball
  Matrix Bc(4, 2);
  Bc << 1, 0, -1, 0, 0, 1, 0, -1;
  const ConvexBody far(HPolyhedron(Bc, vec({101, -100, 1, 1})));
  const Grid gf = build_domain(far, 2, 1.0, R0(2), 0.05);
  const Grid g0 = build_domain(std::nullopt, 2, 1.0, R0(2), 0.05);
  CHECK(candidate_ball(gf, gf.center, 300) == candidate_ball(g0, g0.center, 300));
  CHECK_THROWS_AS(candidate_tangent_ball(g, 0), InputError);
}

}  // TEST_SUITE

TEST_SUITE("diagnostics") {

TEST_CASE("components and diameter") {
  const Grid g = build_domain(std::nullopt, 2, 1.0, 3.0, 0.05);
  const DiscreteSet one = cells_where(g, [](const Vector& x) { return x.norm() < 0.5; });
  CHECK(component_sizes(one, g).size() == 1);
  CHECK(set_diameter(one, g) == doctest::Approx(1.0).epsilon(0.1));
  const DiscreteSet two = cells_where(g, [](const Vector& x) {
    return (x - vec({1, 0})).norm() < 0.4 || (x + vec({1, 0})).norm() < 0.4;
  });
  CHECK(component_sizes(two, g).size() == 2);
}

TEST_CASE("digitized ball is nearly optimal") {
  const Grid g = build_domain(std::nullopt, 3, 1.0, 3.0, 0.05);
  const DiscreteSet B = cells_where(g, [](const Vector& x) { return x.norm() < 1.0; });
  const AsymmetryResult a = asymmetry_deficit(B, g);
  // digitization leaves an O(h / r) boundary layer
  CHECK(a.asymmetry <= g.pitch);
  CHECK(std::abs(a.deficit) <= 0.02);
  const double hd = hausdorff_to_ball(B, g, a.x0);
  CHECK(hd <= 2 * g.pitch * std::sqrt(3.0) / std::cbrt(B.volume(g)));
}

TEST_CASE("asymmetry is translation invariant") {
  const Grid g = build_domain(std::nullopt, 2, 1.0, 4.0, 0.05);
  auto blob = [](const Vector& c) {
    return [c](const Vector& x) {
      const Vector d = x - c;
      return d(0) * d(0) / 1.0 + d(1) * d(1) / 0.3 < 0.5;
    };
  };
  const AsymmetryResult a = asymmetry_deficit(cells_where(g, blob(vec({0, 0}))), g);
  const AsymmetryResult b = asymmetry_deficit(cells_where(g, blob(vec({0.5, 0.25}))), g);
  CHECK(a.asymmetry == doctest::Approx(b.asymmetry).epsilon(0.02));
  CHECK((b.x0 - a.x0 - vec({0.5, 0.25})).norm() < 0.1);
}

TEST_CASE("half-ball is far from its matched ball") {
  const Grid g = build_domain(ConvexBody(oracle::lower_halfspace(3)), 3, 1.0, 3.0, 0.05);
  const double rho = 1.0;
  const DiscreteSet E = cells_where(g, [&](const Vector& x) { return x.norm() < rho && x(2) > 0; });
  const AsymmetryResult a = asymmetry_deficit(E, g);
  const double hd = hausdorff_to_ball(E, g, a.x0);
  // matched ball radius (1/2)^{1/3} rho; the cap height is at least rho - that radius
  const double r = std::cbrt(0.5) * rho;
  CHECK(hd * std::cbrt(E.volume(g)) >= 0.5 * (rho - r));
  CHECK(a.asymmetry > 0.1);
}

}  // TEST_SUITE
