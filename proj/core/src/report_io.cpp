#include "isores/report_io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "isores/errors.hpp"

namespace isores {

using nlohmann::ordered_json;
using json = ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("report: missing field '") + key + "'");
  const json& v = j.at(key);
  if (v.is_null()) return kNaN;
  if (!v.is_number()) throw InputError(std::string("report: field '") + key + "' is not a number");
  return v.get<double>();
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("report: missing field '") + key + "'");
  return j.at(key).get<T>();
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Vector vec_from(const json& a) {
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = a[i].is_null() ? kNaN : a[i].get<double>();
  return v;
}

json report_json(const SolveReport& r) {
  json starts = json::array();
  for (const auto& s : r.starts)
    starts.push_back({{"label", s.label}, {"initial", num(s.initial)}, {"final", num(s.final)}});
  json j = {
      {"v_target", num(r.v_target)},
      {"v_achieved", num(r.v_achieved)},
      {"cells", r.cells},
      {"energy", num(r.energy)},
      {"obstacle_perimeter", num(r.obstacle_perimeter)},
      {"components", r.components},
      {"component_sizes", r.component_sizes},
      {"diameter", num(r.diameter)},
      {"asymmetry", num(r.asymmetry)},
      {"deficit", num(r.deficit)},
      {"x0", vec_json(r.x0)},
      {"hausdorff", num(r.hausdorff)},
      {"curvature",
       {{"samples", r.curvature.samples},
        {"mean", num(r.curvature.mean)},
        {"spread", num(r.curvature.spread)},
        {"max_abs", num(r.curvature.max_abs)},
        {"bound", num(r.curvature.bound)}}},
      {"density",
       {{"samples", r.density.samples},
        {"violations", r.density.violations},
        {"min_ratio", num(r.density.min_ratio)}}},
      {"touches_window", r.touches_window},
      {"relaxed_energy", r.relaxed_energy ? num(*r.relaxed_energy) : json(nullptr)},
      {"relax_gap", num(r.relax_gap)},
      {"relax_iterations", r.relax_iterations},
      {"relax_converged", r.relax_converged},
      {"partial", r.partial},
      {"method", r.method},
      {"start", r.start},
      {"starts", starts},
      {"seed", r.seed},
      {"dim", r.dim},
      {"pitch", num(r.pitch)},
      {"window_multiple", num(r.window_multiple)},
      {"window_radius", num(r.window_radius)},
      {"flags", r.flags},
  };
  return j;
}

SolveReport report_from(const json& j) {
  SolveReport r;
  r.v_target = get_num(j, "v_target");
  r.v_achieved = get_num(j, "v_achieved");
  r.cells = get<std::size_t>(j, "cells");
  r.energy = get_num(j, "energy");
  r.obstacle_perimeter = get_num(j, "obstacle_perimeter");
  r.components = get<std::size_t>(j, "components");
  r.component_sizes = get<std::vector<std::size_t>>(j, "component_sizes");
  r.diameter = get_num(j, "diameter");
  r.asymmetry = get_num(j, "asymmetry");
  r.deficit = get_num(j, "deficit");
  r.x0 = vec_from(j.at("x0"));
  r.hausdorff = get_num(j, "hausdorff");
  const json& c = j.at("curvature");
  r.curvature.samples = get<decltype(r.curvature.samples)>(c, "samples");
  r.curvature.mean = get_num(c, "mean");
  r.curvature.spread = get_num(c, "spread");
  r.curvature.max_abs = get_num(c, "max_abs");
  r.curvature.bound = get_num(c, "bound");
  const json& d = j.at("density");
  r.density.samples = get<decltype(r.density.samples)>(d, "samples");
  r.density.violations = get<decltype(r.density.violations)>(d, "violations");
  r.density.min_ratio = get_num(d, "min_ratio");
  r.touches_window = get<bool>(j, "touches_window");
  if (!j.at("relaxed_energy").is_null()) r.relaxed_energy = get_num(j, "relaxed_energy");
  r.relax_gap = get_num(j, "relax_gap");
  r.relax_iterations = get<int>(j, "relax_iterations");
  r.relax_converged = get<bool>(j, "relax_converged");
  r.partial = get<bool>(j, "partial");
  r.method = get<std::string>(j, "method");
  r.start = get<std::string>(j, "start");
  for (const auto& s : j.at("starts"))
    r.starts.push_back({get<std::string>(s, "label"), get_num(s, "initial"), get_num(s, "final")});
  r.seed = get<std::uint64_t>(j, "seed");
  r.dim = get<int>(j, "dim");
  r.pitch = get_num(j, "pitch");
  r.window_multiple = get_num(j, "window_multiple");
  r.window_radius = get_num(j, "window_radius");
  r.flags = get<std::vector<std::string>>(j, "flags");
  return r;
}

json table_json(const ProfileTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json jr = {{"v", num(row.point.v)},
               {"I", num(row.point.I)},
               {"residue", num(row.point.residue)},
               {"source", to_string(row.point.source)},
               {"I_raw", num(row.I_raw)},
               {"calibration", num(row.calibration)},
               {"deficit", num(row.deficit)},
               {"pitch", num(row.pitch)},
               {"negative_residue", row.negative_residue},
               {"report", row.report ? report_json(*row.report) : json(nullptr)},
               {"error", row.error}};
    rows.push_back(std::move(jr));
  }
  return {{"dim", t.dim}, {"body", t.body}, {"rows", rows}};
}

ProfileSource source_from(const std::string& s) {
  if (s == "closed_form") return ProfileSource::kClosedForm;
  if (s == "grid_solver") return ProfileSource::kGridSolver;
  if (s == "construction") return ProfileSource::kConstruction;
  throw InputError("report: unknown profile source '" + s + "'");
}

ProfileTable table_from(const json& j) {
  ProfileTable t;
  t.dim = get<int>(j, "dim");
  t.body = get<std::string>(j, "body");
  for (const auto& jr : j.at("rows")) {
    ScanRow row;
    row.point.v = get_num(jr, "v");
    row.point.I = get_num(jr, "I");
    row.point.residue = get_num(jr, "residue");
    row.point.source = source_from(get<std::string>(jr, "source"));
    row.I_raw = get_num(jr, "I_raw");
    row.calibration = get_num(jr, "calibration");
    row.deficit = get_num(jr, "deficit");
    row.pitch = get_num(jr, "pitch");
    row.negative_residue = get<bool>(jr, "negative_residue");
    if (!jr.at("report").is_null()) row.report = report_from(jr.at("report"));
    row.error = get<std::string>(jr, "error");
    t.rows.push_back(std::move(row));
  }
  return t;
}

Verdict verdict_from(const std::string& s) {
  for (Verdict v : {Verdict::kConsistent, Verdict::kInconsistent, Verdict::kInconclusive})
    if (to_string(v) == s) return v;
  throw InputError("report: unknown verdict '" + s + "'");
}

json fit_json(const ScalingFit& f) {
  return {{"slope", num(f.slope)},         {"intercept", num(f.intercept)},
          {"r2", num(f.r2)},               {"points", f.points},
          {"window_lo", num(f.window_lo)}, {"window_hi", num(f.window_hi)},
          {"verdict", to_string(f.verdict)}, {"note", f.note}};
}

ScalingFit fit_from(const json& j) {
  ScalingFit f;
  f.slope = get_num(j, "slope");
  f.intercept = get_num(j, "intercept");
  f.r2 = get_num(j, "r2");
  f.points = get<std::size_t>(j, "points");
  f.window_lo = get_num(j, "window_lo");
  f.window_hi = get_num(j, "window_hi");
  f.verdict = verdict_from(get<std::string>(j, "verdict"));
  f.note = get<std::string>(j, "note");
  return f;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string table_to_csv(const ProfileTable& table) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& row : table.rows) {
    out += format_double(row.point.v);
    if (!row.error.empty() || !row.report) {
      out += ",,,,,,,,error,\n";
      continue;
    }
    const SolveReport& r = *row.report;
    out += "," + format_double(row.point.I) + "," + format_double(row.point.residue) + "," +
           std::to_string(r.components) + "," + format_double(r.diameter) + "," +
           format_double(r.asymmetry) + "," + format_double(row.deficit) + "," +
           format_double(r.hausdorff) + "," + r.method + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::vector<ProfilePoint> points_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw InputError("csv: empty input");
  const auto header = split_csv_line(line);
  int iv = -1, iI = -1, iR = -1, im = -1;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == "v") iv = static_cast<int>(k);
    if (header[k] == "I") iI = static_cast<int>(k);
    if (header[k] == "residue") iR = static_cast<int>(k);
    if (header[k] == "method") im = static_cast<int>(k);
  }
  if (iv < 0 || iI < 0 || iR < 0) throw InputError("csv: header needs v, I and residue columns");
  std::vector<ProfilePoint> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size())
      throw InputError("csv: line " + std::to_string(lineno) + " has the wrong field count");
    if (im >= 0 && f[static_cast<std::size_t>(im)] == "error") continue;
    auto parse = [&](int k) {
      const std::string& s = f[static_cast<std::size_t>(k)];
      double x = 0.0;
      auto res = std::from_chars(s.data(), s.data() + s.size(), x);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InputError("csv: bad number '" + s + "' on line " + std::to_string(lineno));
      return x;
    };
    ProfilePoint p;
    p.v = parse(iv);
    p.I = parse(iI);
    p.residue = parse(iR);
    p.source = ProfileSource::kGridSolver;
    pts.push_back(p);
  }
  return pts;
}

std::string report_to_json(const SolveReport& report) { return report_json(report).dump(2); }

std::string bundle_to_json(const ReportBundle& b) {
  json j;
  j["tool"] = b.tool;
  j["version"] = b.version;
  j["command"] = b.command;
  json cfg = json::object();
  for (const auto& [k, v] : b.config) cfg[k] = v;
  j["config"] = cfg;
  if (b.report) j["report"] = report_json(*b.report);
  if (b.table) j["table"] = table_json(*b.table);
  if (b.fit) j["fit"] = fit_json(*b.fit);
  if (!b.result.empty()) {
    try {
      j["result"] = json::parse(b.result);
    } catch (const json::exception& e) {
      throw InputError(std::string("bundle: result is not valid JSON: ") + e.what());
    }
  }
  if (!b.timings.empty()) {
    json t = json::object();
    for (const auto& [k, v] : b.timings) t[k] = num(v);
    j["timings"] = t;
  }
  return j.dump(2) + "\n";
}

ReportBundle bundle_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("bundle: invalid JSON: ") + e.what());
  }
  try {
    ReportBundle b;
    b.tool = get<std::string>(j, "tool");
    b.version = get<std::string>(j, "version");
    b.command = get<std::string>(j, "command");
    for (const auto& [k, v] : j.at("config").items()) b.config[k] = v.get<std::string>();
    if (j.contains("report")) b.report = report_from(j.at("report"));
    if (j.contains("table")) b.table = table_from(j.at("table"));
    if (j.contains("fit")) b.fit = fit_from(j.at("fit"));
    if (j.contains("result")) b.result = j.at("result").dump();
    if (j.contains("timings"))
      for (const auto& [k, v] : j.at("timings").items()) b.timings[k] = v.is_null() ? kNaN : v.get<double>();
    return b;
  } catch (const json::exception& e) {
    throw InputError(std::string("bundle: malformed report: ") + e.what());
  }
}

}  // namespace isores
