#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isores/residue.hpp"
#include "isores/solver.hpp"

namespace isores {

inline constexpr const char* kCsvHeader = "v,I,residue,components,diameter,asymmetry,deficit,hd_norm,method,seed";

// One line per row in kCsvHeader order. Failed rows keep v, leave the
// numeric fields empty and carry method "error".
std::string table_to_csv(const ProfileTable& table);

// (v, I, residue) from CSV text with the header above; error rows skipped.
std::vector<ProfilePoint> points_from_csv(const std::string& csv);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

struct ReportBundle {
  std::string tool = "isores";
  std::string version;
  std::string command;
  std::map<std::string, std::string> config;
  std::optional<SolveReport> report;
  std::optional<ProfileTable> table;
  std::optional<ScalingFit> fit;
  std::string result;  // raw JSON text for subcommand-specific payloads; empty when absent
  std::map<std::string, double> timings;  // seconds; written only when non-empty
};

// Non-finite numbers are written as null and read back as NaN, so
// write -> read -> write is byte-identical.
std::string bundle_to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const std::string& text);

std::string report_to_json(const SolveReport& report);

}  // namespace isores
