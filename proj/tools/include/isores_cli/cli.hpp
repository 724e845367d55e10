#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isores/body_io.hpp"
#include "isores/profiles.hpp"
#include "isores/solver.hpp"

namespace isores::cli {

enum ExitCode : int { kOk = 0, kRuntime = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;
  std::string body_path;
  std::optional<LoadedBody> body;
  int dim = 0;

  double volume = 0.0;
  std::vector<double> volumes;
  double window = 0.0;  // multiple of v^{1/N}; 0 picks R0
  std::optional<double> pitch;
  int axis_cells = 192;
  std::uint64_t seed = 0;
  SolveMethod method = SolveMethod::kBoth;
  int max_starts = 3;
  bool calibrate = true;
  SolverConstants constants;
  int threads = 0;

  std::string out;       // primary output file; stdout when empty
  std::string json_out;  // scan/compare: bundle JSON
  std::string csv_in;    // fit/render input
  std::string input;     // render: bundle JSON or CSV
  std::string svg_out;
  std::string pgm_prefix;                 // solve: slice images <prefix>_<k>.pgm
  std::vector<double> slices;             // solve: slice heights (3D)
  std::optional<int> dstar;               // fit/render override
  bool timings = false;

  std::map<std::string, std::string> snapshot;  // flags as given, for report bundles
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kOk;
  std::string message;  // usage, help or error text
};

ParseOutcome parse_cli(int argc, const char* const* argv);
ParseOutcome parse_cli(const std::vector<std::string>& args);  // args[0] is the program name

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_cli followed by run; what main() calls.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isores::cli
