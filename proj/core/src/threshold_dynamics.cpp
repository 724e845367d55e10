#include "isores/threshold_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isores {

namespace {

void blur_axis(std::vector<float>& f, const std::array<int, 3>& n, int axis,
               const std::vector<float>& kernel) {
  const int r = static_cast<int>(kernel.size()) - 1;
  const std::array<std::size_t, 3> step{1, static_cast<std::size_t>(n[0]),
                                        static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1])};
  const auto ua = static_cast<std::size_t>(axis);
  const int len = n[ua];
  std::vector<float> line(static_cast<std::size_t>(len)), out(static_cast<std::size_t>(len));
  std::array<int, 3> other{};
  for (other[2] = 0; other[2] < (axis == 2 ? 1 : n[2]); ++other[2])
    for (other[1] = 0; other[1] < (axis == 1 ? 1 : n[1]); ++other[1])
      for (other[0] = 0; other[0] < (axis == 0 ? 1 : n[0]); ++other[0]) {
        std::size_t base = 0;
        for (std::size_t a = 0; a < 3; ++a)
          if (a != ua) base += static_cast<std::size_t>(other[a]) * step[a];
        for (int i = 0; i < len; ++i)
          line[static_cast<std::size_t>(i)] = f[base + static_cast<std::size_t>(i) * step[ua]];
        for (int i = 0; i < len; ++i) {
          float s = kernel[0] * line[static_cast<std::size_t>(i)];
          for (int k = 1; k <= r; ++k) {
            if (i - k >= 0) s += kernel[static_cast<std::size_t>(k)] * line[static_cast<std::size_t>(i - k)];
            if (i + k < len) s += kernel[static_cast<std::size_t>(k)] * line[static_cast<std::size_t>(i + k)];
          }
          out[static_cast<std::size_t>(i)] = s;
        }
        for (int i = 0; i < len; ++i)
          f[base + static_cast<std::size_t>(i) * step[ua]] = out[static_cast<std::size_t>(i)];
      }
}

}  // namespace

std::vector<float> smooth_indicator(const DiscreteSet& E, const Grid& g, const Box& box,
                                    double sigma_cells, bool normalize) {
  std::array<int, 3> n{};
  for (std::size_t a = 0; a < 3; ++a) n[a] = box.hi[a] - box.lo[a] + 1;
  const std::size_t total = static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
                            static_cast<std::size_t>(n[2]);
  std::vector<float> f(total), wgt(normalize ? total : 0);
  std::size_t t = 0;
  for (int k = box.lo[2]; k <= box.hi[2]; ++k)
    for (int j = box.lo[1]; j <= box.hi[1]; ++j)
      for (int i = box.lo[0]; i <= box.hi[0]; ++i, ++t) {
        const std::size_t idx = g.index(i, j, k);
        f[t] = E.in[idx] ? 1.0f : 0.0f;
        if (normalize) wgt[t] = g.labels[idx] == Cell::kObstacle ? 0.0f : 1.0f;
      }
  const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma_cells)));
  std::vector<float> kernel(static_cast<std::size_t>(r) + 1);
  float ksum = 0.0f;
  for (int k = 0; k <= r; ++k) {
    kernel[static_cast<std::size_t>(k)] = static_cast<float>(std::exp(-0.5 * k * k / (sigma_cells * sigma_cells)));
    ksum += (k == 0 ? 1.0f : 2.0f) * kernel[static_cast<std::size_t>(k)];
  }
  for (float& x : kernel) x /= ksum;
  for (int a = 0; a < g.dim; ++a) {
    blur_axis(f, n, a, kernel);
    if (normalize) blur_axis(wgt, n, a, kernel);
  }
  if (normalize)
    for (std::size_t i = 0; i < total; ++i) f[i] = wgt[i] > 1e-6f ? f[i] / wgt[i] : 0.0f;
  return f;
}

MboResult threshold_dynamics(DiscreteSet& E, const Grid& g, const Stencil& s,
                             const MboConfig& cfg) {
  MboResult res;
  const std::size_t count = E.count;
  const int pad = static_cast<int>(std::ceil(3.0 * cfg.sigma_cells)) + 2;
  DiscreteSet best = E;
  double best_energy = perimeter_split(E, g, s).relative;
  DiscreteSet prev;
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const Box box = bounding_box(E, g, pad);
    const auto f = smooth_indicator(E, g, box, cfg.sigma_cells, true);
    std::vector<std::pair<float, std::size_t>> cand;
    std::size_t t = 0;
    for (int k = box.lo[2]; k <= box.hi[2]; ++k)
      for (int j = box.lo[1]; j <= box.hi[1]; ++j)
        for (int i = box.lo[0]; i <= box.hi[0]; ++i, ++t) {
          const std::size_t idx = g.index(i, j, k);
          if (g.labels[idx] == Cell::kFree) cand.emplace_back(f[t], idx);
        }
    const auto mid = cand.begin() + static_cast<std::ptrdiff_t>(std::min(count, cand.size()));
    std::nth_element(cand.begin(), mid, cand.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    DiscreteSet next(g.size());
    for (auto it2 = cand.begin(); it2 != mid; ++it2) next.insert(it2->second);
    res.iterations = it;
    const bool fixed = next == E, cycle = next == prev;
    prev = std::move(E);
    E = std::move(next);
    const double e = perimeter_split(E, g, s).relative;
    if (e < best_energy) {
      best_energy = e;
      best = E;
    }
    if (fixed || cycle) {
      res.converged = true;
      break;
    }
  }
  E = std::move(best);
  res.energy = best_energy;
  return res;
}

}  // namespace isores
