#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isores/asymdim.hpp"
#include "isores/profiles.hpp"
#include "isores/solver.hpp"

namespace isores {

// Pitch from a fixed number of cells per v^{1/N} so discretization error is
// volume-uniform; snapped so unit-scale obstacle faces stay on cell faces.
struct PitchPolicy {
  int axis_cells = 192;                 // cells across the window diameter
  std::optional<double> fixed_pitch;    // overrides axis_cells
  bool snap = true;
};

struct ScanConfig {
  SolverConfig solver;
  double window = 0.0;  // multiple R; 0 picks R0
  std::optional<Vector> center;
  PitchPolicy pitch;
  // Divide each rung's energy by the free-space solver error at the same
  // pitch and volume: I = I_grid * I_free(v) / I_free_grid(v).
  bool calibrate = true;
  bool concurrent = true;
};

double ladder_pitch(const PitchPolicy& p, int dim, double v, double R);

struct ScanRow {
  ProfilePoint point;  // calibrated I and residue
  double I_raw = 0.0;
  double calibration = 1.0;  // I_free(v) / I_free_grid(v)
  double deficit = 0.0;      // calibrated the same way
  double pitch = 0.0;
  bool negative_residue = false;
  std::optional<SolveReport> report;
  std::string error;  // non-empty when the rung failed
};

struct ProfileTable {
  int dim = 0;
  std::string body;  // descriptor
  std::vector<ScanRow> rows;
};

std::vector<double> geometric_ladder(double v0, double ratio, int count);

// Free-space calibration solves are cached per process; this drops the cache.
void clear_calibration_cache();

ProfileTable scan(const std::optional<ConvexBody>& body, int dim, const std::vector<double>& volumes,
                  const ScanConfig& cfg = {}, const std::string& descriptor = "");

enum class Verdict { kConsistent, kInconsistent, kInconclusive };
std::string to_string(Verdict v);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
  double window_lo = 0.0;  // d*/2N
  double window_hi = 0.0;  // d*/N
  Verdict verdict = Verdict::kInconclusive;
  std::string note;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

// Log-log fit of residue against volume over positive-residue rows. Needs at
// least 5 such rows spanning two decades, else the verdict is inconclusive.
ScalingFit fit_scaling(const std::vector<ProfilePoint>& points, int dstar, int dim,
                       double slack = 0.06);
ScalingFit fit_scaling(const ProfileTable& table, int dstar);

// Construction-only profile points from ball_attachment.
std::vector<ProfilePoint> attachment_points(const CylinderBody& cyl, const std::vector<double>& radii,
                                            const AttachmentOptions& opt = {});

struct SandwichRow {
  double v = 0.0;
  double I_body = 0.0;
  double I_cylinder = 0.0;
  double R_body = 0.0;
  double R_cylinder = 0.0;
  bool upper_ok = false;  // I_body <= I_cylinder (1 + tol)
  bool lower_ok = false;  // R_body - R_cylinder >= -tol I_cylinder
};

struct SandwichReport {
  StructureDecomposition decomposition;
  ProfileTable body_table;
  ProfileTable cylinder_table;
  std::vector<SandwichRow> rows;
  std::optional<LineFit> gap_fit;  // log(R_C - R_{Z+D}) against log v
  double gap_reference = 0.0;      // (d* - 1) / N
  bool holds = false;
};

SandwichReport cylinder_sandwich(const HPolyhedron& body, const std::vector<double>& volumes,
                                 const ScanConfig& cfg = {}, double tol = 0.03);

enum class RigidityVerdict { kHalfSpace, kFreeProfile, kInconclusive };
std::string to_string(RigidityVerdict v);

struct RigidityReport {
  int dstar = 0;
  RigidityVerdict verdict = RigidityVerdict::kInconclusive;
  std::vector<double> ratios;  // I / I_H when d* >= N-1, else I / I_free
  double max_deviation = 0.0;  // max |I / I_H - 1|
  double trend = 0.0;          // slope of the ratio against log v
  ProfileTable table;
  std::string note;
};

RigidityReport rigidity_check(const ConvexBody& body, const std::vector<double>& volumes,
                              const ScanConfig& cfg = {});
// Verdict from an existing table.
RigidityReport rigidity_verdict(ProfileTable table, int dstar);

}  // namespace isores
