#pragma once

#include <optional>
#include <string>

#include "isores/convex.hpp"

namespace isores {

enum class ProfileSource { kClosedForm, kGridSolver, kConstruction };

std::string to_string(ProfileSource s);

struct ProfilePoint {
  double v = 0.0;
  double I = 0.0;
  double residue = 0.0;
  ProfileSource source = ProfileSource::kClosedForm;
};

struct SolverConstants {
  int dim = 3;
  double R0 = 0.0;
  double Lambda0 = 0.0;
  double I0 = 4.0;
  double d0 = 4.0;
  double r0 = 0.2;
  double c0 = 0.0;

  // R0 = (2 / omega_N)^{1/N} + 1, Lambda0 = 4N, c0 = 0.1 omega_N.
  static SolverConstants defaults(int dim);
  void validate() const;
};

double unit_ball_volume(int N);
double profile_free(double v, int N);
double profile_halfspace(double v, int N);
// N omega_N^{1/N} v^{(N-1)/N} - I
double residue(double v, double I, int N);
// Radius of the ball of volume v.
double ball_radius(double v, int N);

struct AttachmentResult {
  double r = 0.0;
  double alpha = 0.0;          // half-width of the inscribed cube Q
  Vector cube_center;          // center of Q in cross-section coordinates
  double v = 0.0;              // |B_r \ (Z + D)|
  double displaced = 0.0;      // |B_r ∩ (Z + D)|
  double displaced_error = 0.0;  // |midpoint(h) - midpoint(2h)|
  double hidden_area = 0.0;    // certified lower bound on H^{N-1}(dB_r ∩ (Z + Q))
  double hidden_area_upper = 0.0;  // matching outer quadrature sum
  double perimeter_bound = 0.0;    // N omega_N r^{N-1} - hidden_area >= I_C(v)
  double residue = 0.0;            // residue(v, perimeter_bound) evaluated stably
};

struct AttachmentOptions {
  std::optional<double> alpha;  // skip inscribed-cube detection
  double pitch_fraction = 1.0 / 200.0;  // quadrature pitch as a fraction of alpha
  std::size_t max_cells = 400'000'000;
};

// Ball B_r(c - r e) touching the top of the inscribed cube of the
// cross-section from below (e = last cross-section axis).
AttachmentResult ball_attachment(const CylinderBody& cyl, double r, const AttachmentOptions& opt = {});

// Largest axis-aligned cube inside D: max alpha s.t. a_i.c + alpha |a_i|_1 <= b_i.
std::pair<Vector, double> inscribed_cube(const HPolyhedron& D);

}  // namespace isores
