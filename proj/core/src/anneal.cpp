#include "isores/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace isores {

namespace {

// Inner: E cells with a non-E free or outside neighbor (3^N - 1 stencil).
// Outer: free non-E cells with an E neighbor.
struct Frontier {
  std::vector<std::size_t> inner, outer;
};

Frontier frontier(const DiscreteSet& E, const Grid& g) {
  Frontier f;
  std::vector<std::ptrdiff_t> nb;
  for (int dz = (g.dim == 3 ? -1 : 0); dz <= (g.dim == 3 ? 1 : 0); ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (dx || dy || dz) nb.push_back(dx + dy * g.stride[1] + dz * g.stride[2]);
  const Box box = bounding_box(E, g, 1);
  if (box.empty) return f;
  for (int k = box.lo[2]; k <= box.hi[2]; ++k)
    for (int j = box.lo[1]; j <= box.hi[1]; ++j)
      for (int i = box.lo[0]; i <= box.hi[0]; ++i) {
        const std::size_t idx = g.index(i, j, k);
        if (E.in[idx]) {
          for (auto o : nb) {
            const std::size_t q = idx + static_cast<std::size_t>(o);
            if (!E.in[q] && g.labels[q] != Cell::kObstacle) {
              f.inner.push_back(idx);
              break;
            }
          }
        } else if (g.labels[idx] == Cell::kFree) {
          for (auto o : nb)
            if (E.in[idx + static_cast<std::size_t>(o)]) {
              f.outer.push_back(idx);
              break;
            }
        }
      }
  return f;
}

// Applies remove(i) + add(j); returns the change of relative perimeter.
double swap_cells(DiscreteSet& E, const Grid& g, const Stencil& s, std::size_t i, std::size_t j) {
  double d = flip_delta(E, g, s, i).relative;
  E.erase(i);
  d += flip_delta(E, g, s, j).relative;
  E.insert(j);
  return d;
}

void undo_swap(DiscreteSet& E, std::size_t i, std::size_t j) {
  E.erase(j);
  E.insert(i);
}

}  // namespace

AnnealStats anneal(DiscreteSet& E, const Grid& g, const Stencil& s, const AnnealConfig& cfg) {
  AnnealStats st;
  st.energy_before = perimeter_split(E, g, s).relative;
  const double wmin = *std::min_element(s.weights.begin(), s.weights.end());
  std::mt19937_64 rng(cfg.seed);
  double T = cfg.initial_temperature * wmin;
  constexpr double kStrict = 1e-12;

  for (int sweep = 0; sweep < cfg.sweeps; ++sweep, T *= cfg.cooling) {
    Frontier f = frontier(E, g);
    if (f.inner.empty() || f.outer.empty()) break;
    std::uniform_int_distribution<std::size_t> pick_in(0, f.inner.size() - 1),
        pick_out(0, f.outer.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t proposals = f.inner.size() + f.outer.size();
    for (std::size_t p = 0; p < proposals; ++p) {
      const std::size_t i = f.inner[pick_in(rng)], j = f.outer[pick_out(rng)];
      if (!E.in[i] || E.in[j]) continue;
      const double d = swap_cells(E, g, s, i, j);
      if (d <= 0.0 || unit(rng) < std::exp(-d / T)) {
        ++st.accepted;
      } else {
        undo_swap(E, i, j);
      }
    }
    st.sweeps = sweep + 1;
  }

  // Greedy: pair the cheapest removals with the cheapest additions.
  for (int pass = 0; pass < cfg.greedy_passes; ++pass) {
    Frontier f = frontier(E, g);
    std::vector<std::pair<double, std::size_t>> rem, add;
    for (std::size_t i : f.inner) rem.emplace_back(flip_delta(E, g, s, i).relative, i);
    for (std::size_t j : f.outer) add.emplace_back(flip_delta(E, g, s, j).relative, j);
    std::sort(rem.begin(), rem.end());
    std::sort(add.begin(), add.end());
    bool improved = false;
    const std::size_t m = std::min(rem.size(), add.size());
    for (std::size_t k = 0; k < m; ++k) {
      if (rem[k].first + add[k].first >= -kStrict) break;
      const std::size_t i = rem[k].second, j = add[k].second;
      if (!E.in[i] || E.in[j]) continue;
      const double d = swap_cells(E, g, s, i, j);
      if (d < -kStrict) {
        ++st.accepted;
        improved = true;
      } else {
        undo_swap(E, i, j);
      }
    }
    // Random pairs catch improvements the sorted pairing misses.
    if (!improved && !f.inner.empty() && !f.outer.empty()) {
      std::uniform_int_distribution<std::size_t> pick_in(0, f.inner.size() - 1),
          pick_out(0, f.outer.size() - 1);
      const std::size_t proposals = f.inner.size() + f.outer.size();
      for (std::size_t p = 0; p < proposals; ++p) {
        const std::size_t i = f.inner[pick_in(rng)], j = f.outer[pick_out(rng)];
        if (!E.in[i] || E.in[j]) continue;
        const double d = swap_cells(E, g, s, i, j);
        if (d < -kStrict) {
          ++st.accepted;
          improved = true;
        } else {
          undo_swap(E, i, j);
        }
      }
    }
    st.greedy_passes = pass + 1;
    if (!improved) break;
  }
  st.energy_after = perimeter_split(E, g, s).relative;
  return st;
}

}  // namespace isores
