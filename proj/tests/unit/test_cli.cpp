#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "isores/body_io.hpp"
#include "isores_cli/cli.hpp"

using namespace isores;
using namespace isores::cli;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / ("isores_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path / name;
    write_text_file(p.string(), content);
    return p.string();
  }
};

int run_args(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse examples") {
  TempDir dir;
  const std::string slab = dir.file("slab.json", R"({"kind":"hpoly","dim":3,"A":[[0,0,1],[0,0,-1]],"b":[1,0]})");
  const ParseOutcome d = parse_cli({"isores", "dstar", "--body", slab});
  REQUIRE(d.config);
  CHECK(d.config->subcommand == "dstar");

  const ParseOutcome neg = parse_cli({"isores", "solve", "--volume", "-1", "--body", slab});
  CHECK_FALSE(neg.config);
  CHECK(neg.exit_code == kUsage);

  const std::string cyl = dir.file("cyl.json",
      R"({"kind":"cylinder","z_basis":[[1,0,0]],"cross_section":{"A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,0,1,0]}})");
  const ParseOutcome s = parse_cli({"isores", "scan", "--volumes", "1,4,16", "--body", cyl, "--seed", "7"});
  REQUIRE(s.config);
  CHECK(s.config->volumes == std::vector<double>{1, 4, 16});
  CHECK(s.config->seed == 7);
  CHECK(s.config->dim == 3);
  CHECK(s.config->snapshot.at("seed") == "7");
}

TEST_CASE("usage errors exit with 2") {
  TempDir dir;
  const std::string bad = dir.file("bad.json", "{ not json");
  CHECK(parse_cli({"isores", "dstar", "--body", bad}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "dstar", "--body", (dir.path / "missing.json").string()}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "dstar", "--frobnicate"}).exit_code == kUsage);
  CHECK(parse_cli({"isores"}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "scan", "--dim", "2", "--volumes", "4,1"}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "solve", "--dim", "2", "--volume", "1", "--window", "1.0"}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "solve", "--dim", "2", "--volume", "1", "--method", "magic"}).exit_code == kUsage);
  CHECK(parse_cli({"isores", "solve", "--dim", "4", "--volume", "1"}).exit_code == kUsage);
}

TEST_CASE("runtime and io failures exit with 1") {
  TempDir dir;
  const std::string hp = dir.file("hp.json", R"({"kind":"halfspace","normal":[0,1],"offset":0})");
  std::string out, err;
  CHECK(run_args({"isores", "profile", "--dim", "2", "--volumes", "1", "--out", "/nonexistent/dir/p.csv"}, &out, &err) ==
        kRuntime);
  CHECK(run_args({"isores", "solve", "--body", hp, "--volume", "1e-9", "--pitch", "0.05"}, &out, &err) == kRuntime);
  CHECK(err.find("volume infeasible") != std::string::npos);
}

TEST_CASE("profile and dstar output") {
  TempDir dir;
  std::string out;
  REQUIRE(run_args({"isores", "profile", "--dim", "2", "--volumes", "1"}, &out) == kOk);
  CHECK(out == "v,I_free,I_halfspace,source\n1,3.5449077018110318,2.5066282746310002,closed_form\n");
  const std::string par = dir.file("p.json", R"({"kind":"paraboloid","dim":3})");
  REQUIRE(run_args({"isores", "dstar", "--body", par}, &out) == kOk);
  CHECK(out.find("\"dstar\": 3") != std::string::npos);
  CHECK(out.find("\"method\": \"oracle\"") != std::string::npos);
  CHECK(out.find("\"witness\"") != std::string::npos);
  CHECK(out.find("\"warnings\"") != std::string::npos);
}

TEST_CASE("scan output is deterministic and feeds fit and render") {
  TempDir dir;
  const std::string hp = dir.file("hp.json", R"({"kind":"halfspace","normal":[0,-1],"offset":0})");
  const std::string csv1 = (dir.path / "a.csv").string(), csv2 = (dir.path / "b.csv").string();
  const std::string json = (dir.path / "a.json").string();
  const std::vector<std::string> base = {"isores", "scan", "--body", hp, "--volumes", "1,4", "--axis-cells", "48", "--seed", "3"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return a;
  };
  REQUIRE(run_args(with({"--out", csv1, "--json", json})) == kOk);
  REQUIRE(run_args(with({"--out", csv2})) == kOk);
  CHECK(read_text_file(csv1) == read_text_file(csv2));
  const std::string bundle = read_text_file(json);
  CHECK(bundle.find("\"command\": \"scan\"") != std::string::npos);
  CHECK(bundle.find("timings") == std::string::npos);

  std::string out;
  REQUIRE(run_args({"isores", "fit", "--csv", csv1, "--dstar", "2", "--dim", "2"}, &out) == kOk);
  CHECK(out.find("\"verdict\": \"inconclusive\"") != std::string::npos);
  const std::string svg = (dir.path / "plot.svg").string();
  REQUIRE(run_args({"isores", "render", "--input", json, "--svg", svg}) == kOk);
  CHECK(read_text_file(svg).find("<svg") == 0);
}

TEST_CASE("solve writes a report and slice images") {
  TempDir dir;
  const std::string hp = dir.file("hp.json", R"({"kind":"halfspace","normal":[0,-1],"offset":0})");
  const std::string prefix = (dir.path / "slice").string();
  std::string out;
  REQUIRE(run_args({"isores", "solve", "--body", hp, "--volume", "1", "--axis-cells", "48", "--pgm", prefix}, &out) == kOk);
  CHECK(out.find("\"report\"") != std::string::npos);
  CHECK(read_text_file(prefix + "_0.pgm").substr(0, 2) == "P5");
}

}  // TEST_SUITE
