#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isores/errors.hpp"
#include "isores/grid.hpp"
#include "isores/perimeter.hpp"
#include "isores/profiles.hpp"
#include "oracles.hpp"

using namespace isores;
using oracle::vec;
using std::numbers::pi;

namespace {

// Cells whose centers satisfy pred.
template <class Pred>
DiscreteSet cells_where(const Grid& g, Pred pred) {
  DiscreteSet E(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.is_free(i) && pred(g.cell_center(i))) E.insert(i);
  return E;
}

double R0(int N) { return SolverConstants::defaults(N).R0; }

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("snap pitch") {
  CHECK(snap_pitch(0.3) == doctest::Approx(1.0 / 3.0));
  CHECK(snap_pitch(0.1) == doctest::Approx(0.1));
  CHECK(snap_pitch(0.26) == doctest::Approx(1.0 / 3.0));
  CHECK(snap_pitch(0.24) == doctest::Approx(0.25));
  CHECK(snap_pitch(1.0) == 1.0);
  CHECK(snap_pitch(1.2) == 2.0);
}

TEST_CASE("half-plane window at R0 has room for unit volume") {
  const Grid g = build_domain(ConvexBody(oracle::lower_halfspace(2)), 2, 1.0, R0(2), 0.02);
  CHECK(g.free_volume() > 1.0);
  CHECK(g.window_radius == doctest::Approx(R0(2)));
}

TEST_CASE("domain errors") {
  // window swallowed by a large bounded obstacle
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  const ConvexBody big(HPolyhedron(A, Vector::Constant(4, 100.0)));
  CHECK_THROWS_AS(build_domain(big, 2, 1.0, R0(2), 0.05), Error);
  try {
    build_domain(big, 2, 1.0, R0(2), 0.05);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kVolumeInfeasible);
  }
  try {
    build_domain(std::nullopt, 2, 1.0, R0(2), 1e-4);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kResolutionOverflow);
  }
  CHECK_THROWS_AS(build_domain(std::nullopt, 2, 1.0, 1.0, 0.05), InputError);
  CHECK_THROWS_AS(build_domain(std::nullopt, 4, 1.0, 3.0, 0.05), InputError);
}

TEST_CASE("obstacle mask agrees with membership at cell centers") {
  Matrix A(3, 3);
  A << 0, 0, 1, 0.6, 0.8, 0, -0.6, 0.8, 0;
  const ConvexBody C(HPolyhedron(A, vec({0.2, 0.5, 0.1})));
  const Grid g = build_domain(C, 3, 2.0, R0(3), 0.1);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.labels[i] == Cell::kOutside) continue;
    const bool inside = C.contains(g.cell_center(i));
    if (inside != (g.labels[i] == Cell::kObstacle)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("line-cylinder free volume against quadrature") {
  Matrix Z = Matrix::Zero(3, 1);
  Z(0, 0) = 1;
  Matrix A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  const ConvexBody cyl(CylinderBody(Z, HPolyhedron(A, vec({1, 0, 1, 0}))));
  const double v = 1000.0;
  const double rho = R0(3) * std::cbrt(v);
  const double h = snap_pitch(2 * rho / 128);
  const Grid g = build_domain(cyl, 3, v, R0(3), h);
  // |B_rho| minus the chord integral over D = [0,1]^2
  double inside = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double y = (i + 0.5) / n, z = (j + 0.5) / n;
      inside += 2 * std::sqrt(rho * rho - y * y - z * z) / (n * n);
    }
  const double exact = 4.0 / 3.0 * pi * rho * rho * rho - inside;
  CHECK(g.free_volume() == doctest::Approx(exact).epsilon(0.01));
}

}  // TEST_SUITE

TEST_SUITE("perimeter") {

TEST_CASE("Crofton measures") {
  double s2 = 0, s3 = 0;
  for (double m : crofton_direction_measures(2)) s2 += m;
  for (double m : crofton_direction_measures(3)) s3 += m;
  CHECK(s2 == doctest::Approx(pi));
  CHECK(s3 == doctest::Approx(2 * pi));
}

TEST_CASE("planar response averages to one over the sphere") {
  const Grid g = build_domain(std::nullopt, 3, 1.0, R0(3), 0.1);
  const Stencil s = crofton_stencil(g);
  // Fibonacci sphere
  const int n = 4000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = 1 - 2 * (i + 0.5) / n, r = std::sqrt(1 - z * z);
    const double phi = i * pi * (3 - std::sqrt(5.0));
    sum += planar_response(s, vec({r * std::cos(phi), r * std::sin(phi), z}), g.pitch);
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.005));
}

TEST_CASE("digitized disk and ball") {
  const Grid g2 = build_domain(std::nullopt, 2, 1.0, 3.0, 0.0125);
  const double r2 = 1.0;
  const DiscreteSet D = cells_where(g2, [&](const Vector& x) { return x.norm() < r2; });
  CHECK(relative_perimeter(D, g2) == doctest::Approx(2 * pi * r2).epsilon(0.02));
  CHECK(obstacle_perimeter(D, g2) == 0.0);

  const Grid g3 = build_domain(std::nullopt, 3, 1.0, 3.0, 0.05);
  const double r3 = 1.0;
  const DiscreteSet B = cells_where(g3, [&](const Vector& x) { return x.norm() < r3; });
  CHECK(relative_perimeter(B, g3) == doctest::Approx(4 * pi * r3 * r3).epsilon(0.02));
}

TEST_CASE("half-ball on a flat face") {
  const double rho = 1.0, h = 0.05;
  const ConvexBody H(oracle::lower_halfspace(3));
  const Grid g = build_domain(H, 3, 1.0, 3.0, h);
  const DiscreteSet E = cells_where(g, [&](const Vector& x) { return x.norm() < rho && x(2) > 0; });
  const PerimeterSplit p = perimeter_split(E, g, crofton_stencil(g));
  CHECK(p.relative == doctest::Approx(2 * pi * rho * rho).epsilon(0.02));
  CHECK(p.obstacle == doctest::Approx(pi * rho * rho).epsilon(0.02));

  const Grid free = build_domain(std::nullopt, 3, 1.0, 3.0, h);
  const DiscreteSet F = cells_where(free, [&](const Vector& x) { return x.norm() < rho && x(2) > 0; });
  // no facet rescale without an obstacle: the flat disk sees the axis-plane response
  const double flat = planar_response(crofton_stencil(free), vec({0, 0, 1}), h);
  CHECK(relative_perimeter(F, free) == doctest::Approx((2 + flat) * pi * rho * rho).epsilon(0.02));
}

TEST_CASE("flip delta matches recomputation") {
  std::mt19937_64 rng(2);
  const Grid g = build_domain(ConvexBody(oracle::lower_halfspace(2)), 2, 1.0, 3.0, 0.1);
  const Stencil s = crofton_stencil(g);
  DiscreteSet E = cells_where(g, [](const Vector& x) { return x.norm() < 1.0; });
  for (int t = 0; t < 200; ++t) {
    const std::size_t i = rng() % g.size();
    if (!g.is_free(i)) continue;
    const PerimeterSplit before = perimeter_split(E, g, s);
    const PerimeterSplit d = flip_delta(E, g, s, i);
    if (E.in[i]) E.erase(i);
    else E.insert(i);
    const PerimeterSplit after = perimeter_split(E, g, s);
    CHECK(after.relative - before.relative == doctest::Approx(d.relative).epsilon(1e-9));
    CHECK(after.obstacle - before.obstacle == doctest::Approx(d.obstacle).epsilon(1e-9));
  }
}

}  // TEST_SUITE
