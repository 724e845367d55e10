#pragma once

#include <limits>

#include <Eigen/Dense>

namespace isores {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Numerical tolerances shared by the geometry routines.
struct Tolerances {
  double slack = 1e-9;        // constraint slack for membership and DD sign tests
  double unit = 1e-12;        // |u| = 1 check for support directions
  double orthonormal = 1e-12; // basis orthonormality check
  double rank = 1e-8;         // relative singular value cutoff
};

}  // namespace isores
