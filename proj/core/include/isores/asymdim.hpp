#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isores/convex.hpp"

namespace isores {

struct PolyhedralDstar {
  int dstar = 0;
  std::vector<double> singular_values;  // of the recession ray matrix, descending
  Matrix recession_span;                // orthonormal basis of span(C_inf), N x dstar
  bool rank_ambiguous = false;          // singular value gap below 10x at the cutoff
  std::vector<std::string> warnings;
};

PolyhedralDstar dstar_polyhedral_report(const HPolyhedron& P, const Tolerances& tol = {});
int dstar_polyhedral(const HPolyhedron& P, const Tolerances& tol = {});

// Base points x_n = x0 + n z (z a recession direction, x0 interior) with
// scalings lambda_n = n^-gamma for every gamma in gammas.
struct ScalingSchedule {
  std::vector<double> n_values = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
  std::vector<double> gammas = {0.5, 1.0};
  double extent_tolerance = 0.05;
  int directions = 512;  // random probe directions on the unit sphere
  int bisection_steps = 40;
  std::uint64_t seed = 1;
};

struct ScheduleWitness {
  double gamma = 0.0;
  std::vector<double> n_values;
  std::vector<int> counts;                   // directions with extent above tolerance
  std::vector<std::vector<double>> extents;  // per n, along inertia axes (descending)
  bool stable = false;                       // last three counts agree
};

struct OracleDstar {
  int dstar = 0;
  bool bounded = false;
  std::string confidence;  // "stable", "bounded"
  Vector direction;        // recession direction z used for x_n
  Vector base_point;       // x0
  std::vector<ScheduleWitness> witnesses;
  std::vector<std::string> warnings;
};

// Sequence-based estimate of d*. Bounded bodies return bounded = true, dstar = 0.
// Throws Error(kNoStableLimit) when no schedule yields three agreeing counts.
OracleDstar dstar_oracle(const ConvexBody& body, const ScalingSchedule& schedule = {});

// Exact for polyhedral alternatives, sequence estimate for oracles.
int dstar(const ConvexBody& body);

struct StructureDecomposition {
  int dstar = 0;
  Matrix z_basis;     // N x dstar, orthonormal
  Matrix perp_basis;  // N x (N - dstar), orthonormal
  HPolyhedron cross_section;  // D in perp coordinates
  int containment_samples = 0;
  int containment_failures = 0;
  bool bounded = false;

  CylinderBody cylinder() const;
};

StructureDecomposition structure_decompose(const HPolyhedron& P, std::uint64_t seed = 7);

struct SliceRow {
  double t = 0.0;
  bool empty = false;
  std::size_t probe_points = 0;
  double hausdorff_to_projection = 0.0;
  std::size_t nested_violations = 0;  // probes in C_t but not in the next slice
};

struct SliceReport {
  std::vector<SliceRow> rows;
  std::vector<std::string> notes;
  bool nested = true;
  bool hausdorff_nonincreasing = true;
  double final_hausdorff = 0.0;
};

// Slices C_t = p_{z^perp}(C ∩ (t z + z^perp)) sampled on a pitch-h probe grid
// of radius R in z^perp.
SliceReport slice_check(const ConvexBody& body, const Vector& z, const std::vector<double>& t_values,
                        double R = 2.0, double h = 0.05);

}  // namespace isores
