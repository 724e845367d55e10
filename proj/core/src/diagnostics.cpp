#include "isores/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "isores/perimeter.hpp"
#include "isores/threshold_dynamics.hpp"

namespace isores {

namespace {

std::vector<std::ptrdiff_t> face_offsets(const Grid& g) {
  std::vector<std::ptrdiff_t> out;
  for (int a = 0; a < g.dim; ++a) {
    out.push_back(g.stride[static_cast<std::size_t>(a)]);
    out.push_back(-g.stride[static_cast<std::size_t>(a)]);
  }
  return out;
}

std::vector<std::size_t> members(const DiscreteSet& E) {
  std::vector<std::size_t> out;
  out.reserve(E.count);
  for (std::size_t i = 0; i < E.in.size(); ++i)
    if (E.in[i]) out.push_back(i);
  return out;
}

// E cells with a face neighbor that is neither in E nor obstacle.
std::vector<std::size_t> boundary_cells(const DiscreteSet& E, const Grid& g) {
  const auto faces = face_offsets(g);
  std::vector<std::size_t> out;
  for (std::size_t i : members(E))
    for (auto o : faces) {
      const std::size_t j = i + static_cast<std::size_t>(o);
      if (!E.in[j] && g.labels[j] != Cell::kObstacle) {
        out.push_back(i);
        break;
      }
    }
  return out;
}

std::vector<Vector> sphere_samples(int dim, int count) {
  std::vector<Vector> out;
  for (int k = 0; k < count; ++k) {
    Vector u(dim);
    if (dim == 2) {
      const double th = 2.0 * std::numbers::pi * k / count;
      u << std::cos(th), std::sin(th);
    } else {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(1.0 - z * z);
      const double th = k * std::numbers::pi * (3.0 - std::sqrt(5.0));
      u << r * std::cos(th), r * std::sin(th), z;
    }
    out.push_back(u);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> component_sizes(const DiscreteSet& E, const Grid& g) {
  const auto faces = face_offsets(g);
  std::vector<std::uint8_t> seen(E.in.size(), 0);
  std::vector<std::size_t> sizes, stack;
  for (std::size_t s : members(E)) {
    if (seen[s]) continue;
    std::size_t n = 0;
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++n;
      for (auto o : faces) {
        const std::size_t j = i + static_cast<std::size_t>(o);
        if (E.in[j] && !seen[j]) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

double set_diameter(const DiscreteSet& E, const Grid& g) {
  const auto cells = boundary_cells(E, g);
  if (cells.size() < 2) return 0.0;
  std::vector<Vector> pts;
  pts.reserve(cells.size());
  for (std::size_t i : cells) pts.push_back(g.cell_center(i));
  // Extreme points along many directions, then exact pairwise maximum.
  const auto dirs = sphere_samples(g.dim, g.dim == 2 ? 360 : 1000);
  std::vector<std::size_t> ext;
  for (const Vector& u : dirs) {
    std::size_t best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double s = u.dot(pts[k]);
      if (s > bv) {
        bv = s;
        best = k;
      }
    }
    ext.push_back(best);
  }
  std::sort(ext.begin(), ext.end());
  ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
  double d2 = 0.0;
  for (std::size_t a = 0; a < ext.size(); ++a)
    for (std::size_t b = a + 1; b < ext.size(); ++b)
      d2 = std::max(d2, (pts[ext[a]] - pts[ext[b]]).squaredNorm());
  return std::sqrt(d2);
}

DensityStats density_check(const DiscreteSet& E, const Grid& g, const SolverConstants& k) {
  DensityStats st;
  st.min_ratio = std::numeric_limits<double>::infinity();
  const auto cells = boundary_cells(E, g);
  if (cells.empty()) return st;
  const int N = g.dim;
  const double v = E.volume(g);
  const std::size_t samples = std::min<std::size_t>(64, cells.size());
  const double hN = g.cell_volume();
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t c = cells[s * cells.size() / samples];
    const auto ijk = g.coords(c);
    for (double frac : {1.0, 0.5}) {
      const double r = frac * k.r0 * std::pow(v, 1.0 / N);
      if (r < 2.0 * g.pitch) continue;
      const int rc = static_cast<int>(std::floor(r / g.pitch));
      std::size_t in_e = 0, out_e = 0;
      for (int dz = (N == 3 ? -rc : 0); dz <= (N == 3 ? rc : 0); ++dz)
        for (int dy = -rc; dy <= rc; ++dy)
          for (int dx = -rc; dx <= rc; ++dx) {
            if ((dx * dx + dy * dy + dz * dz) * g.pitch * g.pitch > r * r) continue;
            const int x = ijk[0] + dx, y = ijk[1] + dy, z = ijk[2] + dz;
            if (x < 0 || y < 0 || z < 0 || x >= g.shape[0] || y >= g.shape[1] || z >= g.shape[2]) {
              ++out_e;
              continue;
            }
            (E.in[g.index(x, y, z)] ? in_e : out_e)++;
          }
      const double ratio =
          static_cast<double>(std::min(in_e, out_e)) * hN / std::pow(r, N);
      ++st.samples;
      st.min_ratio = std::min(st.min_ratio, ratio);
      if (ratio < k.c0) ++st.violations;
    }
  }
  if (st.samples == 0) st.min_ratio = 0.0;
  return st;
}

CurvatureStats curvature_stats(const DiscreteSet& E, const Grid& g, const SolverConstants& k) {
  CurvatureStats st;
  if (E.count == 0) return st;
  const int N = g.dim;
  st.bound = k.Lambda0 * std::pow(E.volume(g), -1.0 / N);
  // Smoothing scales with the set so that staircase noise stays below the
  // curvature signal 1/r.
  const double r_cells = ball_radius(E.volume(g), N) / g.pitch;
  const double sigma = std::max(2.0, 0.08 * r_cells);
  const Box box = bounding_box(E, g, static_cast<int>(std::ceil(3.0 * sigma)) + 3);
  if (box.empty) return st;
  const auto phi = smooth_indicator(E, g, box, sigma, false);
  std::array<int, 3> n{};
  for (std::size_t a = 0; a < 3; ++a) n[a] = box.hi[a] - box.lo[a] + 1;
  const std::array<std::ptrdiff_t, 3> step{1, n[0], static_cast<std::ptrdiff_t>(n[0]) * n[1]};
  const std::size_t total = phi.size();
  std::vector<std::array<float, 3>> normal(total, {0.f, 0.f, 0.f});
  auto local = [&](int i, int j, int kk) {
    return static_cast<std::size_t>((i - box.lo[0]) + step[1] * (j - box.lo[1]) +
                                    step[2] * (kk - box.lo[2]));
  };
  auto inner = [&](int i, int j, int kk) {
    const std::array<int, 3> c{i, j, kk};
    for (int a = 0; a < N; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      if (c[ua] <= box.lo[ua] || c[ua] >= box.hi[ua]) return false;
    }
    return true;
  };
  for (int kk = box.lo[2]; kk <= box.hi[2]; ++kk)
    for (int j = box.lo[1]; j <= box.hi[1]; ++j)
      for (int i = box.lo[0]; i <= box.hi[0]; ++i) {
        if (!inner(i, j, kk)) continue;
        const std::size_t t = local(i, j, kk);
        std::array<float, 3> gr{0.f, 0.f, 0.f};
        float len = 0.f;
        for (int a = 0; a < N; ++a) {
          const auto s = static_cast<std::size_t>(step[static_cast<std::size_t>(a)]);
          gr[static_cast<std::size_t>(a)] = 0.5f * (phi[t + s] - phi[t - s]);
          len += gr[static_cast<std::size_t>(a)] * gr[static_cast<std::size_t>(a)];
        }
        len = std::sqrt(len);
        if (len > 1e-6f)
          for (int a = 0; a < N; ++a) normal[t][static_cast<std::size_t>(a)] = -gr[static_cast<std::size_t>(a)] / len;
      }
  const int guard = static_cast<int>(std::ceil(2.0 * sigma));
  std::vector<double> H;
  for (std::size_t c : boundary_cells(E, g)) {
    const auto ijk = g.coords(c);
    bool clean = true;
    for (int dz = (N == 3 ? -guard : 0); dz <= (N == 3 ? guard : 0) && clean; ++dz)
      for (int dy = -guard; dy <= guard && clean; ++dy)
        for (int dx = -guard; dx <= guard && clean; ++dx) {
          const int x = ijk[0] + dx, y = ijk[1] + dy, z = ijk[2] + dz;
          if (x < 0 || y < 0 || z < 0 || x >= g.shape[0] || y >= g.shape[1] || z >= g.shape[2] ||
              g.labels[g.index(x, y, z)] != Cell::kFree)
            clean = false;
        }
    if (!clean) continue;
    if (!inner(ijk[0], ijk[1], ijk[2])) continue;
    const std::size_t t = local(ijk[0], ijk[1], ijk[2]);
    double div = 0.0;
    for (int a = 0; a < N; ++a) {
      const auto s = static_cast<std::size_t>(step[static_cast<std::size_t>(a)]);
      div += 0.5 * (normal[t + s][static_cast<std::size_t>(a)] - normal[t - s][static_cast<std::size_t>(a)]);
    }
    H.push_back(div / g.pitch);
  }
  st.samples = H.size();
  if (H.empty()) return st;
  double sum = 0.0, sq = 0.0;
  for (double x : H) {
    sum += x;
    st.max_abs = std::max(st.max_abs, std::abs(x));
  }
  st.mean = sum / static_cast<double>(H.size());
  for (double x : H) sq += (x - st.mean) * (x - st.mean);
  st.spread = std::sqrt(sq / static_cast<double>(H.size()));
  return st;
}

Diagnostics diagnostics(const DiscreteSet& E, const Grid& g, const SolverConstants& k) {
  Diagnostics d;
  d.component_sizes = component_sizes(E, g);
  d.components = d.component_sizes.size();
  d.diameter = set_diameter(E, g);
  d.density = density_check(E, g, k);
  d.curvature = curvature_stats(E, g, k);
  const auto faces = face_offsets(g);
  for (std::size_t i : boundary_cells(E, g)) {
    for (auto o : faces)
      if (g.labels[i + static_cast<std::size_t>(o)] == Cell::kOutside) d.touches_window = true;
    if (d.touches_window) break;
  }
  return d;
}

AsymmetryResult asymmetry_deficit(const DiscreteSet& E, const Grid& g, std::uint64_t seed) {
  AsymmetryResult res;
  const int N = g.dim;
  res.x0 = Vector::Zero(N);
  if (E.count == 0) return res;
  const double v = E.volume(g);
  const double r = ball_radius(v, N);
  const double h = g.pitch;
  const PerimeterSplit p = perimeter_split(E, g, crofton_stencil(g));
  res.perimeter = p.total();
  res.ball_perimeter = profile_free(v, N);
  res.deficit = res.perimeter / res.ball_perimeter - 1.0;

  std::vector<double> pts;
  pts.reserve(E.count * static_cast<std::size_t>(N));
  Vector bary = Vector::Zero(N);
  for (std::size_t i : members(E)) {
    const Vector x = g.cell_center(i);
    bary += x;
    for (int a = 0; a < N; ++a) pts.push_back(x(a));
  }
  bary /= static_cast<double>(E.count);
  // |E ∩ B_r(x)| / |E| with a one-cell linear ramp across the sphere.
  auto overlap = [&](const Vector& x) {
    double s = 0.0;
    const std::size_t n = E.count;
    for (std::size_t k = 0; k < n; ++k) {
      double d2 = 0.0;
      for (int a = 0; a < N; ++a) {
        const double t = pts[k * static_cast<std::size_t>(N) + static_cast<std::size_t>(a)] - x(a);
        d2 += t * t;
      }
      const double d = std::sqrt(d2);
      s += std::clamp(0.5 - (d - r) / h, 0.0, 1.0);
    }
    return s / static_cast<double>(n);
  };
  auto descend = [&](Vector x) {
    double f = overlap(x);
    double stepsize = 0.25 * r;
    int evals = 0;
    while (stepsize > h / 16.0 && evals < 400) {
      bool moved = false;
      for (int a = 0; a < N; ++a)
        for (double sgn : {1.0, -1.0}) {
          for (;;) {
            Vector y = x;
            y(a) += sgn * stepsize;
            const double fy = overlap(y);
            ++evals;
            if (fy > f) {
              f = fy;
              x = y;
              moved = true;
            } else {
              break;
            }
          }
        }
      if (!moved) stepsize *= 0.5;
    }
    return std::pair{f, x};
  };
  auto [best, xb] = descend(bary);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int s = 0; s < 8; ++s) {
    Vector d(N);
    for (int a = 0; a < N; ++a) d(a) = normal(rng);
    d *= 0.5 * r * std::pow(unit(rng), 1.0 / N) / std::max(d.norm(), 1e-12);
    auto [f, x] = descend(bary + d);
    if (f > best) {
      best = f;
      xb = x;
    }
  }
  res.x0 = xb;
  res.asymmetry = std::clamp(2.0 * (1.0 - best), 0.0, 2.0);
  return res;
}

double hausdorff_to_ball(const DiscreteSet& E, const Grid& g, const Vector& x0) {
  const int N = g.dim;
  if (E.count == 0) return 0.0;
  const double v = E.volume(g);
  const double r = ball_radius(v, N);
  std::vector<Vector> iface;
  for (std::size_t i : boundary_cells(E, g)) {
    const Vector x = g.cell_center(i);
    for (int a = 0; a < N; ++a)
      for (int sgn : {1, -1}) {
        const std::size_t j = i + static_cast<std::size_t>(sgn * g.stride[static_cast<std::size_t>(a)]);
        if (E.in[j] || g.labels[j] == Cell::kObstacle) continue;
        Vector m = x;
        m(a) += 0.5 * sgn * g.pitch;
        iface.push_back(m);
      }
  }
  if (iface.empty()) return 0.0;
  double hd = 0.0;
  for (const Vector& p : iface) hd = std::max(hd, std::abs((p - x0).norm() - r));
  for (const Vector& u : sphere_samples(N, N == 2 ? 720 : 2000)) {
    const Vector s = x0 + r * u;
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& p : iface) best = std::min(best, (p - s).squaredNorm());
    hd = std::max(hd, std::sqrt(best));
  }
  return hd / std::pow(v, 1.0 / N);
}

}  // namespace isores
