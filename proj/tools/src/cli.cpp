#include "isores_cli/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "isores/asymdim.hpp"
#include "isores/errors.hpp"
#include "isores/parallel.hpp"
#include "isores/render.hpp"
#include "isores/report_io.hpp"
#include "isores/residue.hpp"

#ifndef ISORES_VERSION
#define ISORES_VERSION "0.0.0"
#endif

namespace isores::cli {

using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    }
    if (used != item.size()) throw UsageError(std::string(what) + ": '" + item + "' is not a number");
    out.push_back(x);
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

// Spelling of a parsed option for the config snapshot.
void snapshot(RunConfig& cfg, const CLI::App& app) {
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    std::string value;
    for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    cfg.snapshot[name] = value.empty() ? "true" : value;
  }
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw UsageError(std::string(what) + " must be positive");
}

void validate(RunConfig& c, const std::string& sub) {
  const bool needs_body = sub == "dstar" || sub == "recession" || sub == "compare";
  if (needs_body && c.body_path.empty()) throw UsageError("--body is required");
  if (!c.body_path.empty()) {
    try {
      c.body = load_body(c.body_path);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (c.dim != 0 && c.dim != c.body->body.dim()) throw UsageError("--dim disagrees with the body");
    c.dim = c.body->body.dim();
  }
  const bool grid = sub == "solve" || sub == "scan" || sub == "compare";
  if (grid || sub == "profile") {
    if (c.dim == 0) throw UsageError("--dim is required without --body");
    if (grid && (c.dim < 2 || c.dim > 3)) throw UsageError("the grid solver supports N = 2 and N = 3");
    if (c.dim < 1 || c.dim > 8) throw UsageError("--dim must be in [1, 8]");
  }
  if (sub == "solve") require_positive(c.volume, "--volume");
  if (sub == "scan" || sub == "compare" || sub == "profile") {
    if (c.volumes.empty()) throw UsageError("--volumes is required");
    for (std::size_t i = 0; i < c.volumes.size(); ++i) {
      require_positive(c.volumes[i], "--volumes entries");
      if (i > 0 && !(c.volumes[i] > c.volumes[i - 1]))
        throw UsageError("--volumes must be strictly increasing");
    }
  }
  if (grid) {
    c.constants = SolverConstants::defaults(c.dim);
    if (c.window != 0.0) {
      require_positive(c.window, "--window");
      if (c.window < c.constants.R0)
        throw UsageError("--window must be at least R0 = " + format_double(c.constants.R0));
    }
    if (c.pitch) require_positive(*c.pitch, "--pitch");
    if (c.axis_cells < 8 || c.axis_cells > 512) throw UsageError("--axis-cells must be in [8, 512]");
    if (c.max_starts < 1) throw UsageError("--starts must be at least 1");
  }
  if (sub == "compare") {
    if (c.body->kind != "hpoly") throw UsageError("compare needs an hpoly body");
  }
  if (sub == "fit" && c.csv_in.empty()) throw UsageError("--csv is required");
  if (sub == "fit" && !c.dstar && !c.body) throw UsageError("--dstar or --body is required");
  if (sub == "fit" || sub == "render") {
    if (c.dstar && (*c.dstar < 0 || *c.dstar > 8)) throw UsageError("--dstar out of range");
  }
  if (sub == "render" && c.input.empty()) throw UsageError("--input is required");
  if (sub == "render" && c.svg_out.empty()) throw UsageError("--svg is required");
  if (c.threads < 0) throw UsageError("--threads must be non-negative");
}

}  // namespace

ParseOutcome parse_cli(int argc, const char* const* argv) {
  ParseOutcome po;
  RunConfig c;
  CLI::App app{"Exterior isoperimetric profiles of convex bodies", "isores"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ISORES_VERSION);

  std::string volumes_text, slices_text, method_text = "both";
  int dstar_value = -1;

  auto body_opt = [&](CLI::App* s) { s->add_option("--body", c.body_path, "Body JSON file"); };
  auto out_opt = [&](CLI::App* s) { s->add_option("--out", c.out, "Output file (stdout when omitted)"); };
  auto solver_opts = [&](CLI::App* s) {
    s->add_option("--dim", c.dim, "Ambient dimension when no body is given");
    s->add_option("--window", c.window, "Window radius as a multiple of v^(1/N); default R0");
    s->add_option("--pitch", c.pitch, "Grid pitch; default from --axis-cells");
    s->add_option("--axis-cells", c.axis_cells, "Cells across the window diameter");
    s->add_option("--seed", c.seed, "Random seed");
    s->add_option("--method", method_text, "relax, anneal or both");
    s->add_option("--starts", c.max_starts, "Candidate starts kept after ranking");
    s->add_option("--threads", c.threads, "Worker threads (overrides ISORES_THREADS)");
    s->add_flag("--timings", c.timings, "Record wall-clock timings in the JSON bundle");
  };

  CLI::App* s_dstar = app.add_subcommand("dstar", "Asymptotic dimension of a body");
  body_opt(s_dstar);
  out_opt(s_dstar);

  CLI::App* s_rec = app.add_subcommand("recession", "Recession cone and structure decomposition");
  body_opt(s_rec);
  out_opt(s_rec);

  CLI::App* s_prof = app.add_subcommand("profile", "Closed-form free and half-space profiles");
  s_prof->add_option("--dim", c.dim, "Ambient dimension")->required();
  s_prof->add_option("--volumes", volumes_text, "Comma-separated volumes")->required();
  out_opt(s_prof);

  CLI::App* s_solve = app.add_subcommand("solve", "Grid minimizer at one volume");
  body_opt(s_solve);
  s_solve->add_option("--volume", c.volume, "Target volume")->required();
  solver_opts(s_solve);
  s_solve->add_option("--pgm", c.pgm_prefix, "Write slice renders to <prefix>_<i>.pgm");
  s_solve->add_option("--slices", slices_text, "Comma-separated slice heights (3D); default the window center");
  out_opt(s_solve);

  CLI::App* s_scan = app.add_subcommand("scan", "Profile and residue over a volume ladder");
  body_opt(s_scan);
  s_scan->add_option("--volumes", volumes_text, "Comma-separated increasing volumes")->required();
  solver_opts(s_scan);
  s_scan->add_flag("!--no-calibrate", c.calibrate, "Skip the free-space calibration");
  s_scan->add_option("--json", c.json_out, "Also write the report bundle");
  out_opt(s_scan);

  CLI::App* s_fit = app.add_subcommand("fit", "Log-log fit of residues from a scan CSV");
  s_fit->add_option("--csv", c.csv_in, "Scan CSV");
  s_fit->add_option("--dstar", dstar_value, "Asymptotic dimension for the admissible window");
  s_fit->add_option("--dim", c.dim, "Ambient dimension")->required();
  body_opt(s_fit);
  s_fit->add_option("--svg", c.svg_out, "Also write the log-log plot");
  out_opt(s_fit);

  CLI::App* s_cmp = app.add_subcommand("compare", "Sandwich against the enveloping cylinder");
  body_opt(s_cmp);
  s_cmp->add_option("--volumes", volumes_text, "Comma-separated increasing volumes")->required();
  solver_opts(s_cmp);
  out_opt(s_cmp);

  CLI::App* s_render = app.add_subcommand("render", "Log-log plot from a scan CSV or bundle");
  s_render->add_option("--input", c.input, "Scan CSV or report bundle JSON");
  s_render->add_option("--svg", c.svg_out, "Output SVG");
  s_render->add_option("--dstar", dstar_value, "Asymptotic dimension");
  s_render->add_option("--dim", c.dim, "Ambient dimension");
  body_opt(s_render);

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    c.subcommand = sub->get_name();
    snapshot(c, *sub);
    c.method = parse_method(method_text);
    if (!volumes_text.empty()) c.volumes = parse_list(volumes_text, "--volumes");
    if (!slices_text.empty()) c.slices = parse_list(slices_text, "--slices");
    if (dstar_value >= 0) c.dstar = dstar_value;
    if (c.subcommand == "render" || c.subcommand == "fit") c.csv_in = c.csv_in.empty() ? c.input : c.csv_in;
    validate(c, c.subcommand);
  } catch (const CLI::CallForHelp&) {
    po.message = app.help();
    po.exit_code = kOk;
    return po;
  } catch (const CLI::CallForVersion&) {
    po.message = std::string(ISORES_VERSION) + "\n";
    po.exit_code = kOk;
    return po;
  } catch (const CLI::ParseError& e) {
    po.message = std::string("error: ") + e.what() + "\n" + app.help();
    po.exit_code = kUsage;
    return po;
  } catch (const UsageError& e) {
    po.message = std::string("error: ") + e.what() + "\n";
    po.exit_code = kUsage;
    return po;
  } catch (const InputError& e) {
    po.message = std::string("error: ") + e.what() + "\n";
    po.exit_code = kUsage;
    return po;
  }
  po.config = std::move(c);
  return po;
}

ParseOutcome parse_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_cli(static_cast<int>(argv.size()), argv.data());
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) out << text;
  else write_text_file(c.out, text);
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json columns_json(const Matrix& M) {
  json a = json::array();
  for (Eigen::Index j = 0; j < M.cols(); ++j) a.push_back(vec_json(M.col(j)));
  return a;
}

ReportBundle bundle_for(const RunConfig& c) {
  ReportBundle b;
  b.version = ISORES_VERSION;
  b.command = c.subcommand;
  b.config = c.snapshot;
  if (c.body) b.config["body"] = c.body->canonical;
  return b;
}

SolverConfig solver_config(const RunConfig& c) {
  SolverConfig s;
  s.method = c.method;
  s.seed = c.seed;
  s.max_starts = c.max_starts;
  s.constants = c.constants;
  return s;
}

ScanConfig scan_config(const RunConfig& c) {
  ScanConfig s;
  s.solver = solver_config(c);
  s.window = c.window;
  s.pitch.axis_cells = c.axis_cells;
  s.pitch.fixed_pitch = c.pitch;
  s.calibrate = c.calibrate;
  return s;
}

std::optional<ConvexBody> obstacle(const RunConfig& c) {
  if (!c.body) return std::nullopt;
  return c.body->body;
}

std::string descriptor(const RunConfig& c) { return c.body ? c.body->canonical : "free"; }

int cmd_dstar(const RunConfig& c, std::ostream& out) {
  const ConvexBody& body = c.body->body;
  json j;
  if (auto P = body.as_polyhedron()) {
    const PolyhedralDstar rep = dstar_polyhedral_report(*P);
    j["dstar"] = rep.dstar;
    j["method"] = "polyhedral";
    j["witness"] = {{"singular_values", rep.singular_values},
                    {"recession_span", columns_json(rep.recession_span)},
                    {"rank_ambiguous", rep.rank_ambiguous}};
    j["warnings"] = rep.warnings;
  } else {
    const OracleDstar rep = dstar_oracle(body);
    j["dstar"] = rep.dstar;
    j["method"] = "oracle";
    json ws = json::array();
    for (const auto& w : rep.witnesses)
      ws.push_back({{"gamma", w.gamma}, {"n", w.n_values}, {"counts", w.counts}, {"stable", w.stable}});
    j["witness"] = {{"bounded", rep.bounded},
                    {"confidence", rep.confidence},
                    {"direction", vec_json(rep.direction)},
                    {"base_point", vec_json(rep.base_point)},
                    {"schedules", ws}};
    j["warnings"] = rep.warnings;
  }
  emit(c, j.dump(2) + "\n", out);
  return kOk;
}

int cmd_recession(const RunConfig& c, std::ostream& out) {
  const auto P = c.body->body.as_polyhedron();
  if (!P) throw InputError("recession needs a polyhedral body");
  const GeneratorRep& cone = to_generators(recession_cone(*P));
  json rays = json::array();
  for (const Vector& r : cone.rays) rays.push_back(vec_json(r));
  const PolyhedralDstar rep = dstar_polyhedral_report(*P);
  json j = {{"dim", P->dim()}, {"rays", rays}, {"span_dim", rep.dstar},
            {"span_basis", columns_json(rep.recession_span)}};
  if (rep.dstar > 0 && rep.dstar < P->dim()) {
    const StructureDecomposition d = structure_decompose(*P);
    j["decomposition"] = {{"z_basis", columns_json(d.z_basis)},
                          {"perp_basis", columns_json(d.perp_basis)},
                          {"cross_section", json::parse(body_to_json(ConvexBody(d.cross_section)))},
                          {"bounded", d.bounded},
                          {"containment_failures", d.containment_failures}};
  }
  emit(c, j.dump(2) + "\n", out);
  return kOk;
}

int cmd_profile(const RunConfig& c, std::ostream& out) {
  std::string csv = "v,I_free,I_halfspace,source\n";
  for (double v : c.volumes)
    csv += format_double(v) + "," + format_double(profile_free(v, c.dim)) + "," +
           format_double(profile_halfspace(v, c.dim)) + "," + to_string(ProfileSource::kClosedForm) + "\n";
  emit(c, csv, out);
  return kOk;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const double R = c.window > 0.0 ? c.window : c.constants.R0;
  PitchPolicy policy;
  policy.axis_cells = c.axis_cells;
  policy.fixed_pitch = c.pitch;
  const double h = ladder_pitch(policy, c.dim, c.volume, R);
  const Grid g = build_domain(obstacle(c), c.dim, c.volume, R, h);
  SolveReport rep = solve(g, c.volume, solver_config(c));
  ReportBundle b = bundle_for(c);
  if (c.timings) b.timings["solve"] = seconds_since(t0);
  if (!c.pgm_prefix.empty()) {
    std::vector<int> layers;
    if (c.dim == 2 || c.slices.empty()) layers.push_back(slice_index(g, g.center(c.dim - 1)));
    else
      for (double z : c.slices) layers.push_back(slice_index(g, z));
    for (std::size_t i = 0; i < layers.size(); ++i)
      write_text_file(c.pgm_prefix + "_" + std::to_string(i) + ".pgm", render_slice(rep.set, g, layers[i]));
  }
  b.report = std::move(rep);
  emit(c, bundle_to_json(b), out);
  return kOk;
}

int cmd_scan(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  ProfileTable table = scan(obstacle(c), c.dim, c.volumes, scan_config(c), descriptor(c));
  emit(c, table_to_csv(table), out);
  if (!c.json_out.empty()) {
    ReportBundle b = bundle_for(c);
    if (c.body) {
      const int ds = dstar(c.body->body);
      b.fit = fit_scaling(table, ds);
      b.config["dstar"] = std::to_string(ds);
    }
    if (c.timings) b.timings["scan"] = seconds_since(t0);
    b.table = std::move(table);
    write_text_file(c.json_out, bundle_to_json(b));
  }
  return kOk;
}

int resolve_dstar(const RunConfig& c) { return c.dstar ? *c.dstar : dstar(c.body->body); }

int cmd_fit(const RunConfig& c, std::ostream& out) {
  const int ds = resolve_dstar(c);
  const auto pts = points_from_csv(read_text_file(c.csv_in));
  const ScalingFit fit = fit_scaling(pts, ds, c.dim);
  ReportBundle b = bundle_for(c);
  b.fit = fit;
  emit(c, bundle_to_json(b), out);
  if (!c.svg_out.empty()) write_text_file(c.svg_out, render_loglog(pts, fit, ds, c.dim));
  return kOk;
}

int cmd_compare(const RunConfig& c, std::ostream& out) {
  const auto t0 = Clock::now();
  const HPolyhedron P = *c.body->body.as_polyhedron();
  const SandwichReport rep = cylinder_sandwich(P, c.volumes, scan_config(c));
  json rows = json::array();
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  for (const auto& r : rep.rows)
    rows.push_back({{"v", num(r.v)}, {"I_body", num(r.I_body)}, {"I_cylinder", num(r.I_cylinder)},
                    {"R_body", num(r.R_body)}, {"R_cylinder", num(r.R_cylinder)},
                    {"upper_ok", r.upper_ok}, {"lower_ok", r.lower_ok}});
  json j = {{"dstar", rep.decomposition.dstar},
            {"cylinder", json::parse(body_to_json(ConvexBody(rep.decomposition.cylinder())))},
            {"rows", rows},
            {"gap_reference", rep.gap_reference},
            {"holds", rep.holds}};
  if (rep.gap_fit) j["gap_fit"] = {{"slope", num(rep.gap_fit->slope)}, {"r2", num(rep.gap_fit->r2)}};
  ReportBundle b = bundle_for(c);
  b.result = j.dump();
  b.table = rep.body_table;
  if (c.timings) b.timings["compare"] = seconds_since(t0);
  emit(c, bundle_to_json(b), out);
  return kOk;
}

int cmd_render(const RunConfig& c, std::ostream&) {
  const std::string text = read_text_file(c.input);
  std::vector<ProfilePoint> pts;
  std::optional<int> ds = c.dstar;
  int dim = c.dim;
  if (!text.empty() && text.front() == '{') {
    const ReportBundle b = bundle_from_json(text);
    if (!b.table) throw InputError("bundle has no profile table");
    for (const auto& r : b.table->rows)
      if (r.error.empty()) pts.push_back(r.point);
    if (dim == 0) dim = b.table->dim;
    if (!ds)
      if (auto it = b.config.find("dstar"); it != b.config.end()) ds = std::stoi(it->second);
  } else {
    pts = points_from_csv(text);
  }
  if (!ds && c.body) ds = dstar(c.body->body);
  if (!ds) throw InputError("d* unknown; pass --dstar");
  if (dim == 0) throw InputError("dimension unknown; pass --dim");
  const ScalingFit fit = fit_scaling(pts, *ds, dim);
  LoglogOptions opt;
  opt.title = "residue scaling, d* = " + std::to_string(*ds);
  write_text_file(c.svg_out, render_loglog(pts, fit, *ds, dim, opt));
  return kOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.threads > 0) set_thread_count(c.threads);
    const std::string& s = c.subcommand;
    if (s == "dstar") return cmd_dstar(c, out);
    if (s == "recession") return cmd_recession(c, out);
    if (s == "profile") return cmd_profile(c, out);
    if (s == "solve") return cmd_solve(c, out);
    if (s == "scan") return cmd_scan(c, out);
    if (s == "fit") return cmd_fit(c, out);
    if (s == "compare") return cmd_compare(c, out);
    if (s == "render") return cmd_render(c, out);
    err << "error: unknown subcommand '" << s << "'\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ParseOutcome po = parse_cli(argc, argv);
  if (!po.config) {
    (po.exit_code == kOk ? out : err) << po.message;
    return po.exit_code;
  }
  return run(*po.config, out, err);
}

}  // namespace isores::cli
