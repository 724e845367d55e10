#pragma once

// Test-side reference values, computed independently of the library.

#include <cmath>
#include <random>
#include <numbers>

#include "isores/convex.hpp"

namespace oracle {

// omega_N by the recursion omega_N = omega_{N-2} 2 pi / N.
inline double omega(int N) {
  if (N == 0) return 1.0;
  if (N == 1) return 2.0;
  return omega(N - 2) * 2.0 * std::numbers::pi / N;
}

inline double free_profile(double v, int N) {
  // perimeter of the ball of volume v: radius from v = omega r^N
  const double r = std::pow(v / omega(N), 1.0 / N);
  return N * omega(N) * std::pow(r, N - 1);
}

inline double halfspace_profile(double v, int N) {
  // half ball of volume v has radius r with v = omega r^N / 2 and free area N omega r^{N-1} / 2
  const double r = std::pow(2.0 * v / omega(N), 1.0 / N);
  return 0.5 * N * omega(N) * std::pow(r, N - 1);
}

// Frozen high-precision values (mpmath, 30 digits, rounded).
inline constexpr double kFree3v1 = 4.83597586204940;
inline constexpr double kHalf3v1 = 3.83831658535503;
inline constexpr double kResidueHalf3v1 = 0.99765927669438;
inline constexpr double kFree2v1 = 3.54490770181103;
inline constexpr double kHalf2v1 = 2.50662827463100;
inline constexpr double kR0N2 = 1.79788456080287;
inline constexpr double kR0N3 = 1.78159264179677;

inline isores::Vector vec(std::initializer_list<double> xs) {
  isores::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// {x : x_N <= 0} written as one row.
inline isores::HPolyhedron lower_halfspace(int N) {
  isores::Matrix A = isores::Matrix::Zero(1, N);
  A(0, N - 1) = 1.0;
  return isores::HPolyhedron(A, isores::Vector::Zero(1));
}

// R^k x [0,1]^{N-k}
inline isores::HPolyhedron slab_product(int N, int k) {
  const int m = 2 * (N - k);
  isores::Matrix A = isores::Matrix::Zero(m, N);
  isores::Vector b = isores::Vector::Zero(m);
  for (int i = 0; i < N - k; ++i) {
    A(2 * i, k + i) = 1.0;
    b(2 * i) = 1.0;
    A(2 * i + 1, k + i) = -1.0;
  }
  return isores::HPolyhedron(A, b);
}

// Orthant {x >= 0}.
inline isores::HPolyhedron orthant(int N) {
  return isores::HPolyhedron(-isores::Matrix::Identity(N, N), isores::Vector::Zero(N));
}

inline isores::HPolyhedron cube(int N) { return slab_product(N, 0); }

// Uniform random unit vector from a fixed generator.
template <class Rng>
isores::Vector random_unit(int N, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  isores::Vector u(N);
  for (int i = 0; i < N; ++i) u(i) = g(rng);
  return u / u.norm();
}

// Random rotation by QR of a Gaussian matrix.
template <class Rng>
isores::Matrix random_rotation(int N, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  isores::Matrix M(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) M(i, j) = g(rng);
  Eigen::HouseholderQR<isores::Matrix> qr(M);
  isores::Matrix Q = qr.householderQ();
  return Q;
}

}  // namespace oracle
