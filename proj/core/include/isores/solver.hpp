#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isores/anneal.hpp"
#include "isores/diagnostics.hpp"
#include "isores/relax.hpp"
#include "isores/threshold_dynamics.hpp"

namespace isores {

enum class SolveMethod { kRelax, kAnneal, kBoth };
std::string to_string(SolveMethod m);
SolveMethod parse_method(const std::string& s);

struct SolverConfig {
  SolveMethod method = SolveMethod::kBoth;
  std::uint64_t seed = 0;
  int max_starts = 3;  // candidate starts kept after ranking by energy
  RelaxConfig relax;
  MboConfig mbo;
  AnnealConfig anneal;
  std::optional<SolverConstants> constants;  // defaults(dim) when unset
  bool diagnostics = true;
};

struct StartRecord {
  std::string label;
  double initial = 0.0;
  double final = 0.0;
};

struct SolveReport {
  double v_target = 0.0;
  double v_achieved = 0.0;
  std::size_t cells = 0;
  double energy = 0.0;              // P(E; free): relative perimeter
  double obstacle_perimeter = 0.0;  // P(E; dC)
  std::size_t components = 0;
  std::vector<std::size_t> component_sizes;
  double diameter = 0.0;
  double asymmetry = 0.0;
  double deficit = 0.0;
  Vector x0;
  double hausdorff = 0.0;  // normalized by v^{1/N}
  CurvatureStats curvature;
  DensityStats density;
  bool touches_window = false;
  std::optional<double> relaxed_energy;
  double relax_gap = 0.0;
  int relax_iterations = 0;
  bool relax_converged = false;
  bool partial = false;
  std::string method;
  std::string start;
  std::vector<StartRecord> starts;
  std::uint64_t seed = 0;
  int dim = 0;
  double pitch = 0.0;
  double window_multiple = 0.0;
  double window_radius = 0.0;
  std::vector<std::string> flags;
  DiscreteSet set;  // the minimizer; not serialized
};

// Minimizes P(E; free) at fixed volume over the grid's free cells.
SolveReport solve(const Grid& g, double v, const SolverConfig& cfg = {});

}  // namespace isores
