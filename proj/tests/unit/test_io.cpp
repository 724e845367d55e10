#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "isores/body_io.hpp"
#include "isores/errors.hpp"
#include "isores/render.hpp"
#include "isores/report_io.hpp"
#include "oracles.hpp"

using namespace isores;
using oracle::vec;

namespace {

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

SolveReport sample_report() {
  SolveReport r;
  r.v_target = 1.0;
  r.v_achieved = 0.9999;
  r.cells = 1234;
  r.energy = 2.5066;
  r.obstacle_perimeter = 1.6;
  r.components = 1;
  r.component_sizes = {1234};
  r.diameter = 2.1;
  r.asymmetry = 0.1 / 3.0;
  r.deficit = std::numeric_limits<double>::quiet_NaN();
  r.x0 = vec({0.1, 0.2});
  r.hausdorff = 0.05;
  r.relaxed_energy = 1.2;
  r.method = "both";
  r.start = "halfball:f0";
  r.starts = {{"ball", 3.0, 2.6}, {"halfball:f0", 2.55, 2.5066}};
  r.seed = 18446744073709551615ull;
  r.dim = 2;
  r.pitch = 1.0 / 48;
  r.flags = {"relaxation_not_converged"};
  return r;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("body kinds") {
  const LoadedBody hp = parse_body(R"({"kind":"hpoly","dim":3,"A":[[0,0,1],[0,0,-1]],"b":[1,0]})");
  CHECK(hp.kind == "hpoly");
  CHECK(hp.body.contains(vec({1e6, 0, 0.5})));
  const LoadedBody hs = parse_body(R"({"kind":"halfspace","normal":[0,2],"offset":0})");
  CHECK(hs.body.contains(vec({3, -0.1})));
  CHECK_FALSE(hs.body.contains(vec({3, 0.1})));
  const LoadedBody cyl = parse_body(
      R"({"kind":"cylinder","z_basis":[[1,0,0]],"cross_section":{"A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,0,1,0]}})");
  CHECK(cyl.body.kind() == "cylinder");
  CHECK(cyl.body.contains(vec({-50, 0.5, 0.5})));
  const LoadedBody par = parse_body(R"({"kind":"paraboloid","dim":3,"curvature":2})");
  CHECK_FALSE(par.body.contains(vec({1, 0, 1.5})));
  CHECK(par.body.contains(vec({1, 0, 2.5})));
  const LoadedBody ball = parse_body(R"({"kind":"ball","center":[0,0],"radius":2})");
  CHECK(support(ball.body, vec({0, 1})) == doctest::Approx(2.0));
  const LoadedBody og = parse_body(
      R"({"kind":"oracle-grid","dim":2,"directions":[[0,1],[0,-1],[1,0]],"support":[1,0,null]})");
  CHECK(og.body.is_oracle());
  CHECK(support(og.body, vec({0, 1})) == doctest::Approx(1.0));
  CHECK(support(og.body, vec({1, 0})) == kInf);
}

TEST_CASE("malformed bodies are input errors") {
  CHECK_THROWS_AS(parse_body("{"), InputError);
  CHECK_THROWS_AS(parse_body(R"({"kind":"torus"})"), InputError);
  CHECK_THROWS_AS(parse_body(R"({"kind":"hpoly","dim":2,"A":[[1,0],[0]],"b":[1,1]})"), InputError);
  CHECK_THROWS_AS(parse_body(R"({"kind":"paraboloid","dim":3,"curvature":-1})"), InputError);
  CHECK_THROWS_AS(load_body("/nonexistent/body.json"), Error);
}

TEST_CASE("polyhedral bodies round-trip") {
  const ConvexBody slab(oracle::slab_product(3, 1));
  const LoadedBody back = parse_body(body_to_json(slab));
  for (const Vector& u : {vec({0, 1, 0}), vec({0, 0, -1}), vec({0.6, 0.8, 0})})
    CHECK(support(back.body, u) == support(slab, u));
  CHECK_THROWS_AS(body_to_json(ConvexBody(make_paraboloid(2))), InputError);
}

TEST_CASE("bundle write-read-write is byte-identical") {
  ReportBundle b;
  b.version = "1.2.3";
  b.command = "solve";
  b.config = {{"volume", "1"}, {"seed", "7"}};
  b.report = sample_report();
  ProfileTable t;
  t.dim = 3;
  t.body = "{\"kind\":\"hpoly\"}";
  ScanRow ok;
  ok.point = {8.0, 17.5, 1.75, ProfileSource::kGridSolver};
  ok.report = sample_report();
  ScanRow bad;
  bad.point.v = 16.0;
  bad.error = "volume infeasible";
  t.rows = {ok, bad};
  b.table = t;
  ScalingFit f;
  f.slope = 0.3;
  f.points = 1;
  f.verdict = Verdict::kInconclusive;
  f.note = "x";
  b.fit = f;
  b.result = R"({"dstar":1,"w":[0.1,null]})";
  const std::string first = bundle_to_json(b);
  const std::string second = bundle_to_json(bundle_from_json(first));
  CHECK(first == second);
  CHECK(first.find("timings") == std::string::npos);
  b.timings["solve"] = 1.5;
  CHECK(bundle_to_json(bundle_from_json(bundle_to_json(b))) == bundle_to_json(b));
  CHECK(bundle_from_json(first).report->seed == 18446744073709551615ull);
  CHECK(std::isnan(bundle_from_json(first).report->deficit));
  CHECK_THROWS_AS(bundle_from_json("[1,2]"), InputError);
}

TEST_CASE("csv") {
  ProfileTable empty;
  CHECK(table_to_csv(empty) == std::string(kCsvHeader) + "\n");
  ProfileTable t;
  t.dim = 3;
  ScanRow ok;
  ok.point = {8.0, 17.5, 0.25, ProfileSource::kGridSolver};
  ok.deficit = 0.01;
  SolveReport r = sample_report();
  r.seed = 7;
  ok.report = r;
  ScanRow bad;
  bad.point.v = 16.0;
  bad.error = "volume infeasible";
  t.rows = {ok, bad};
  const std::string csv = table_to_csv(t);
  CHECK(csv.substr(0, csv.find('\n')) == "v,I,residue,components,diameter,asymmetry,deficit,hd_norm,method,seed");
  CHECK(csv.find("\n16,,,,,,,,error,\n") != std::string::npos);
  const auto pts = points_from_csv(csv);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].v == 8.0);
  CHECK(pts[0].residue == 0.25);
  CHECK_THROWS_AS(points_from_csv("v,I,residue\n1,x,2\n"), InputError);
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("slice image") {
  const Grid g = build_domain(ConvexBody(oracle::slab_product(3, 2)), 3, 1.0, 2.0, 0.1, vec({0, 0, 1}));
  DiscreteSet E(g.size());
  const int k = slice_index(g, 1.05);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vector c = g.cell_center(i);
    if (g.is_free(i) && c.norm() < 1.6 && c(2) > 1.0) E.insert(i);
  }
  const std::string pgm = render_slice(E, g, k);
  const std::string header = "P5\n" + std::to_string(g.shape[0]) + " " + std::to_string(g.shape[1]) + "\n255\n";
  REQUIRE(pgm.substr(0, header.size()) == header);
  const std::string px = pgm.substr(header.size());
  CHECK(px.size() == static_cast<std::size_t>(g.shape[0] * g.shape[1]));
  CHECK(px.find(static_cast<char>(0)) != std::string::npos);
  CHECK(px.find(static_cast<char>(255)) != std::string::npos);
  // the slab occupies the slice below z = 1
  const int below = slice_index(g, 0.5);
  const std::string low = render_slice(E, g, below).substr(header.size());
  CHECK(low.find(static_cast<char>(128)) != std::string::npos);
  CHECK(low.find(static_cast<char>(0)) == std::string::npos);
  CHECK(render_slice(E, g, k) == pgm);
}

TEST_CASE("log-log plot has two dashed reference lines") {
  std::vector<ProfilePoint> pts;
  for (int i = 0; i < 8; ++i) {
    const double v = std::pow(4.0, i);
    pts.push_back({v, 0.0, 2.0 * std::pow(v, 0.25), ProfileSource::kGridSolver});
  }
  ScalingFit f;
  f.slope = 0.25;
  f.intercept = std::log(2.0);
  f.points = 8;
  const std::string svg = render_loglog(pts, f, 1, 3);
  CHECK(count_of(svg, "stroke-dasharray=\"6,4\"") == 2);
  CHECK(count_of(svg, "class=\"ref-lower\"") == 1);
  CHECK(count_of(svg, "class=\"ref-upper\"") == 1);
  CHECK(count_of(svg, "class=\"point\"") == 8);
  LoglogOptions opt;
  opt.envelope_exponent = 0.3;
  CHECK(count_of(render_loglog(pts, f, 1, 3, opt), "ref-envelope") == 1);
}

TEST_CASE("file helpers") {
  const auto path = std::filesystem::temp_directory_path() / "isores_io_test.txt";
  write_text_file(path.string(), "abc\n");
  CHECK(read_text_file(path.string()) == "abc\n");
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_text_file("/nonexistent/dir/x.txt", "x"), Error);
}

}  // TEST_SUITE
