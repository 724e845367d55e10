#include "isores/solver.hpp"

#include <algorithm>
#include <cmath>

#include "isores/candidates.hpp"
#include "isores/errors.hpp"

namespace isores {

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::kRelax: return "relax";
    case SolveMethod::kAnneal: return "anneal";
    case SolveMethod::kBoth: return "both";
  }
  return "both";
}

SolveMethod parse_method(const std::string& s) {
  if (s == "relax") return SolveMethod::kRelax;
  if (s == "anneal") return SolveMethod::kAnneal;
  if (s == "both") return SolveMethod::kBoth;
  throw InputError("unknown method '" + s + "' (relax, anneal, both)");
}

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SolveReport solve(const Grid& g, double v, const SolverConfig& cfg) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError("volume must be positive");
  const int N = g.dim;
  const SolverConstants k = cfg.constants ? *cfg.constants : SolverConstants::defaults(N);
  k.validate();
  const std::size_t count = cell_count(g, v);
  if (count == 0) throw Error(ErrorCode::kEmptySet, "volume is smaller than one cell");
  if (count >= g.free_cells)
    throw Error(ErrorCode::kVolumeInfeasible, "volume exceeds the free cells of the window");

  SolveReport rep;
  rep.v_target = v;
  rep.method = to_string(cfg.method);
  rep.seed = cfg.seed;
  rep.dim = N;
  rep.pitch = g.pitch;
  rep.window_multiple = g.window_multiple;
  rep.window_radius = g.window_radius;
  const Stencil st = crofton_stencil(g);

  std::vector<Candidate> starts;
  if (cfg.method != SolveMethod::kAnneal) {
    const RelaxedField field = relax(g, v, cfg.relax);
    rep.relaxed_energy = field.energy;
    rep.relax_gap = field.gap;
    rep.relax_iterations = field.iterations;
    rep.relax_converged = field.converged;
    if (!field.converged) {
      rep.partial = true;
      rep.flags.emplace_back("relaxation_not_converged");
    }
    DiscreteSet E = threshold_field(field, g, count);
    if (E.count == 0) throw Error(ErrorCode::kEmptySet, "thresholded set is empty");
    starts.push_back({"relaxation", std::move(E)});
  }
  if (cfg.method != SolveMethod::kRelax) {
    auto cands = generate_candidates(g, count);
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i = 0; i < cands.size(); ++i)
      ranked.emplace_back(perimeter_split(cands[i].set, g, st).relative, i);
    std::sort(ranked.begin(), ranked.end());
    const std::size_t keep = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(std::max(1, cfg.max_starts)));
    for (std::size_t r = 0; r < keep; ++r) starts.push_back(std::move(cands[ranked[r].second]));
  }
  if (starts.empty()) throw Error(ErrorCode::kEmptySet, "no starting set could be built");

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < starts.size(); ++s) {
    DiscreteSet E = std::move(starts[s].set);
    StartRecord rec{starts[s].label, perimeter_split(E, g, st).relative, 0.0};
    threshold_dynamics(E, g, st, cfg.mbo);
    AnnealConfig ac = cfg.anneal;
    ac.seed = mix(cfg.seed ^ mix(s));
    anneal(E, g, st, ac);
    rec.final = perimeter_split(E, g, st).relative;
    rep.starts.push_back(rec);
    if (rec.final < best) {
      best = rec.final;
      rep.set = std::move(E);
      rep.start = rec.label;
    }
  }

  const PerimeterSplit split = perimeter_split(rep.set, g, st);
  rep.energy = split.relative;
  rep.obstacle_perimeter = split.obstacle;
  rep.cells = rep.set.count;
  rep.v_achieved = rep.set.volume(g);
  if (rep.obstacle_perimeter > rep.energy * 1.02 + 1e-9)
    rep.flags.emplace_back("obstacle_contact_exceeds_free_perimeter");

  if (cfg.diagnostics) {
    const Diagnostics d = diagnostics(rep.set, g, k);
    rep.components = d.components;
    rep.component_sizes = d.component_sizes;
    rep.diameter = d.diameter;
    rep.density = d.density;
    rep.curvature = d.curvature;
    rep.touches_window = d.touches_window;
    const AsymmetryResult a = asymmetry_deficit(rep.set, g, cfg.seed);
    rep.asymmetry = a.asymmetry;
    rep.deficit = a.deficit;
    rep.x0 = a.x0;
    rep.hausdorff = hausdorff_to_ball(rep.set, g, a.x0);
    const double scale = std::pow(rep.v_achieved, 1.0 / N);
    if (rep.components > 1) rep.flags.emplace_back("multiple_components");
    if (rep.components > static_cast<std::size_t>(k.I0)) rep.flags.emplace_back("components_exceed_I0");
    if (rep.diameter > k.d0 * scale) rep.flags.emplace_back("diameter_exceeds_d0");
    if (rep.density.violations > 0) rep.flags.emplace_back("density_violation");
    if (rep.curvature.max_abs > rep.curvature.bound) rep.flags.emplace_back("curvature_exceeds_bound");
    if (rep.touches_window) {
      rep.flags.emplace_back("touches_window");
      if (g.obstacle && g.obstacle->is_oracle()) rep.flags.emplace_back("mass_drift_along_obstacle");
    }
  }
  return rep;
}

}  // namespace isores
