#include "isores/hausdorff.hpp"

#include <cmath>

#include "isores/errors.hpp"

namespace isores {
namespace {

constexpr double kFar = 1e30;

// Lower envelope of parabolas (Felzenszwalb-Huttenlocher) along one line.
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
  v.assign(static_cast<std::size_t>(n), 0);
  z.assign(static_cast<std::size_t>(n) + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -kFar;
  z[1] = kFar;
  for (int q = 1; q < n; ++q) {
    double s;
    while (true) {
      const int p = v[static_cast<std::size_t>(k)];
      s = ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
          (2.0 * (q - p));
      if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    if (s <= z[static_cast<std::size_t>(k)]) {
      // k == 0 and the new parabola dominates everywhere.
      v[0] = q;
      z[0] = -kFar;
      z[1] = kFar;
      continue;
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = kFar;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
    const int p = v[static_cast<std::size_t>(k)];
    d[q] = static_cast<double>(q - p) * (q - p) + f[p];
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const std::vector<unsigned char>& feature,
                                               const std::vector<int>& shape) {
  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  std::vector<double> grid(total);
  for (std::size_t i = 0; i < total; ++i) grid[i] = feature[i] ? 0.0 : kFar;

  std::vector<std::size_t> stride(shape.size());
  std::size_t acc = 1;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    stride[a] = acc;
    acc *= static_cast<std::size_t>(shape[a]);
  }
  std::vector<int> v;
  std::vector<double> z, f, d;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    const int n = shape[axis];
    f.resize(static_cast<std::size_t>(n));
    d.resize(static_cast<std::size_t>(n));
    const std::size_t st = stride[axis];
    for (std::size_t base = 0; base < total; ++base) {
      if ((base / st) % static_cast<std::size_t>(n) != 0) continue;  // line starts only
      for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = grid[base + i * st];
      edt_1d(f.data(), d.data(), n, v, z);
      for (int i = 0; i < n; ++i) grid[base + i * st] = std::min(d[static_cast<std::size_t>(i)], kFar);
    }
  }
  return grid;
}

double local_hausdorff(const Membership& a, const Membership& b, int dim, double R, double h,
                       const Vector& center) {
  if (!(R > 0.0) || !(h > 0.0)) throw InputError("R and h must be positive");
  if (center.size() != dim) throw InputError("window center has the wrong dimension");
  const int half = static_cast<int>(std::floor(R / h));
  const int side = 2 * half + 1;
  double total_d = std::pow(static_cast<double>(side), dim);
  if (total_d > static_cast<double>(1 << 25))
    throw Error(ErrorCode::kResolutionOverflow, "probe grid too large");
  const std::size_t total = static_cast<std::size_t>(total_d);
  std::vector<int> shape(static_cast<std::size_t>(dim), side);
  std::vector<unsigned char> in_a(total, 0), in_b(total, 0);
  std::size_t count_a = 0, count_b = 0;
  Vector p(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (int ax = 0; ax < dim; ++ax) {
      p(ax) = center(ax) + h * (static_cast<double>(rem % static_cast<std::size_t>(side)) - half);
      rem /= static_cast<std::size_t>(side);
    }
    if ((p - center).norm() > R) continue;
    if (a(p)) {
      in_a[idx] = 1;
      ++count_a;
    }
    if (b(p)) {
      in_b[idx] = 1;
      ++count_b;
    }
  }
  if (count_a == 0 || count_b == 0)
    throw Error(ErrorCode::kDisjointFromWindow, "a body misses the probe window");
  const std::vector<double> dt_b = squared_distance_transform(in_b, shape);
  const std::vector<double> dt_a = squared_distance_transform(in_a, shape);
  double worst = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (in_a[idx]) worst = std::max(worst, dt_b[idx]);
    if (in_b[idx]) worst = std::max(worst, dt_a[idx]);
  }
  return std::sqrt(worst) * h;
}

double local_hausdorff(const ConvexBody& a, const ConvexBody& b, double R, double h) {
  return local_hausdorff(a, b, R, h, Vector::Zero(a.dim()));
}

double local_hausdorff(const ConvexBody& a, const ConvexBody& b, double R, double h,
                       const Vector& center) {
  if (a.dim() != b.dim()) throw InputError("bodies have different dimensions");
  return local_hausdorff([&a](const Vector& x) { return a.contains(x); },
                         [&b](const Vector& x) { return b.contains(x); }, a.dim(), R, h, center);
}

}  // namespace isores
