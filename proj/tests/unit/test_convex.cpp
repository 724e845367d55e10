#include <doctest.h>

#include <random>

#include "isores/convex.hpp"
#include "isores/errors.hpp"
#include "isores/hausdorff.hpp"
#include "oracles.hpp"

using namespace isores;
using oracle::vec;

TEST_SUITE("convex") {

TEST_CASE("membership examples") {
  CHECK(contains(ConvexBody(oracle::lower_halfspace(3)), vec({0, 0, 0})));
  CHECK(contains(ConvexBody(oracle::slab_product(3, 2)), vec({1e6, 0, 0.5})));
  CHECK_FALSE(contains(ConvexBody(make_paraboloid(3)), vec({1, 0, 0.5})));
  CHECK_THROWS_AS(contains(ConvexBody(oracle::cube(3)), vec({0, 0})), InputError);
}

TEST_CASE("support examples") {
  CHECK(support(ConvexBody(oracle::cube(3)), vec({1, 0, 0})) == doctest::Approx(1.0));
  const ConvexBody slab(oracle::slab_product(3, 2));
  CHECK(support(slab, vec({1, 0, 0})) == kInf);
  CHECK(support(slab, vec({0, 0, 1})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(support(slab, vec({0, 0, 2})), InputError);
}

TEST_CASE("constructor rejects degenerate input") {
  Matrix A(2, 1);
  A << 1, -1;
  CHECK_THROWS_AS(HPolyhedron(A, vec({0, -1})), Error);  // empty
  CHECK_THROWS_AS(HPolyhedron(A, vec({0, 0})), Error);   // a point
}

TEST_CASE("recession cone examples") {
  const HPolyhedron half = recession_cone(oracle::lower_halfspace(3));
  CHECK(half.contains(vec({5, -3, -1})));
  CHECK_FALSE(half.contains(vec({0, 0, 1})));
  CHECK(to_generators(recession_cone(oracle::cube(3))).rays.empty());
  // slab: span of the rays is the hyperplane {d_3 = 0}
  const GeneratorRep& g = to_generators(recession_cone(oracle::slab_product(3, 2)));
  REQUIRE(!g.rays.empty());
  Matrix R(3, static_cast<Eigen::Index>(g.rays.size()));
  for (std::size_t i = 0; i < g.rays.size(); ++i) {
    CHECK(std::abs(g.rays[i](2)) < 1e-12);
    R.col(static_cast<Eigen::Index>(i)) = g.rays[i];
  }
  Eigen::JacobiSVD<Matrix> svd(R);
  CHECK(svd.rank() == 2);
}

TEST_CASE("generators") {
  Matrix A(4, 3);
  A << -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 1, 1;
  const HPolyhedron simplex(A, vec({0, 0, 0, 1}));
  CHECK(simplex.generators().vertices.size() == 4);
  CHECK(simplex.generators().rays.empty());
  const HPolyhedron orthant = oracle::orthant(3);
  const GeneratorRep& o = orthant.generators();
  CHECK(o.vertices.size() == 1);
  CHECK(o.vertices[0].norm() < 1e-12);
  CHECK(o.rays.size() == 3);
}

TEST_CASE("generator support matches H-form on random directions") {
  std::mt19937_64 rng(11);
  Matrix A(5, 3);
  A << 0, 0, 1, 0, 0, -1, 1, 1, 0, -1, 2, 0, 0.3, -1, 0.2;
  for (Eigen::Index i = 0; i < A.rows(); ++i) A.row(i).normalize();
  const HPolyhedron P(A, vec({1, 0, 1, 2, 3}));
  // LP value from the H-form as the reference
  for (int s = 0; s < 100; ++s) {
    const Vector u = oracle::random_unit(3, rng);
    const dd::LpResult lp = dd::maximize(P.A(), P.b(), u);
    const double h = P.generators().support(u);
    if (lp.status == dd::LpStatus::kUnbounded) CHECK(h == kInf);
    else CHECK(h == doctest::Approx(lp.value).epsilon(1e-7));
  }
}

TEST_CASE("cone property and P + rec(P) inside P") {
  std::mt19937_64 rng(5);
  const HPolyhedron P = oracle::slab_product(3, 1);
  const HPolyhedron C = recession_cone(P);
  CHECK(C.contains(Vector::Zero(3)));
  const GeneratorRep& g = to_generators(C);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int s = 0; s < 100; ++s) {
    Vector d = Vector::Zero(3);
    for (const Vector& r : g.rays) d += 3.0 * U(rng) * r;
    for (double lam : {0.5, 2.0, 10.0}) CHECK(C.contains(lam * d));
    const Vector x = vec({10 * U(rng) - 5, U(rng), U(rng)});
    REQUIRE(P.contains(x));
    CHECK(P.contains(x + d));
  }
}

TEST_CASE("translate_scale round trip") {
  std::mt19937_64 rng(3);
  const ConvexBody C(oracle::slab_product(3, 1));
  const Vector x = vec({0.3, 0.2, 0.7});
  const double lam = 2.5;
  const ConvexBody back = translate_scale(translate_scale(translate_scale(C, x, lam), Vector::Zero(3), 1.0 / lam),
                                          -x, 1.0);
  for (int s = 0; s < 50; ++s) {
    const Vector u = oracle::random_unit(3, rng);
    const double a = support(C, u), b = support(back, u);
    if (a == kInf) CHECK(b == kInf);
    else CHECK(b == doctest::Approx(a).epsilon(1e-9));
  }
  CHECK_THROWS_AS(translate_scale(C, x, 0.0), InputError);
  // radius-1 ball scaled by 2 doubles the support
  const ConvexBody ball(make_ball_oracle(Vector::Zero(3), 1.0));
  CHECK(support(translate_scale(ball, Vector::Zero(3), 2.0), vec({0, 1, 0})) == doctest::Approx(2.0));
}

TEST_CASE("projection") {
  const ConvexBody slab(oracle::slab_product(3, 2));
  Matrix e3 = Matrix::Zero(3, 1);
  e3(2, 0) = 1;
  const ConvexBody seg = project(slab, e3);
  CHECK(support(seg, vec({1})) == doctest::Approx(1.0));
  CHECK(support(seg, vec({-1})) == doctest::Approx(0.0).epsilon(1e-12));

  Matrix plane = Matrix::Zero(3, 2);
  plane(0, 0) = plane(1, 1) = 1;
  const ConvexBody sq = project(ConvexBody(oracle::cube(3)), plane);
  CHECK(sq.as_polyhedron()->generators().vertices.size() == 4);

  Matrix e1 = Matrix::Zero(3, 1);
  e1(0, 0) = 1;
  const ConvexBody line = project(ConvexBody(make_paraboloid(3)), e1);
  CHECK(support(line, vec({1})) == kInf);
  CHECK(support(line, vec({-1})) == kInf);

  Matrix bad = Matrix::Ones(3, 1);
  CHECK_THROWS_AS(project(slab, bad), InputError);
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 rng(9);
  const ConvexBody C(oracle::slab_product(3, 1));
  Matrix B = oracle::random_rotation(3, rng).leftCols(2);
  const ConvexBody once = project(C, B);
  const ConvexBody twice = project(once, Matrix::Identity(2, 2));
  for (int s = 0; s < 30; ++s) {
    const Vector u = oracle::random_unit(2, rng);
    const double a = support(once, u), b = support(twice, u);
    if (a == kInf) CHECK(b == kInf);
    else CHECK(b == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("support oracle contract") {
  CHECK(check_support_oracle(make_paraboloid(3), 200, 1) == 0);
  CHECK(check_support_oracle(make_ball_oracle(vec({1, 2}), 0.5), 200, 2) == 0);
  CHECK(check_support_oracle(make_polyhedral_oracle(oracle::slab_product(3, 1)), 200, 3) == 0);
}

TEST_CASE("local hausdorff examples") {
  const ConvexBody A(oracle::lower_halfspace(2));
  const double h = 0.02;
  CHECK(local_hausdorff(A, A, 1.0, h) <= 2 * h * std::sqrt(2.0));
  const ConvexBody B(make_halfspace(vec({0, 1}), -0.3));
  CHECK(std::abs(local_hausdorff(A, B, 2.0, h) - 0.3) <= 2 * h * std::sqrt(2.0));
  const ConvexBody far(make_ball_oracle(vec({10, 10}), 1.0));
  CHECK_THROWS_AS(local_hausdorff(A, far, 1.0, h), Error);
}

TEST_CASE("local hausdorff is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-0.5, 0.5);
  const double h = 0.05, err = 2 * h * std::sqrt(2.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<ConvexBody> bodies;
    for (int k = 0; k < 3; ++k)
      bodies.emplace_back(make_halfspace(oracle::random_unit(2, rng), U(rng)));
    const double ab = local_hausdorff(bodies[0], bodies[1], 1.5, h);
    const double ba = local_hausdorff(bodies[1], bodies[0], 1.5, h);
    const double bc = local_hausdorff(bodies[1], bodies[2], 1.5, h);
    const double ac = local_hausdorff(bodies[0], bodies[2], 1.5, h);
    CHECK(std::abs(ab - ba) <= err);
    CHECK(ac <= ab + bc + 3 * err);
  }
}

TEST_CASE("paraboloid rescaling approaches the unit-radius cylinder") {
  // lambda (C - n e_N) with lambda = n^{-1/2}: {y_N >= |y'|^2 sqrt(n)... } near the
  // window the set tends to {|y'| <= 1}, the limit cylinder in the Kuratowski sense.
  const ConvexBody P(make_paraboloid(2));
  double prev = kInf;
  for (double n : {1e2, 1e4, 1e6}) {
    const ConvexBody S = translate_scale(P, vec({0, n}), 1.0 / std::sqrt(n));
    Membership limit = [](const Vector& y) { return std::abs(y(0)) <= 1.0; };
    Membership body = [&](const Vector& y) { return S.contains(y); };
    const double d = local_hausdorff(body, limit, 2, 0.5, 0.01, Vector::Zero(2));
    CHECK(d <= prev + 0.03);
    prev = d;
  }
  CHECK(prev < 0.05);
}

}  // TEST_SUITE
