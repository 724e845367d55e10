#include "isores/relax.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "isores/errors.hpp"
#include "isores/parallel.hpp"

namespace isores {

double box_volume_conjugate(std::vector<double> c, double mu, double V) {
  std::sort(c.begin(), c.end(), std::greater<>());
  const auto n = static_cast<double>(c.size());
  // f(S) = best c.u with sum u = S; concave, kinks at integers and at V.
  double best = -std::numeric_limits<double>::infinity();
  double prefix = 0.0;
  for (std::size_t k = 0; k <= c.size(); ++k) {
    const auto S = static_cast<double>(k);
    best = std::max(best, prefix - mu * std::abs(S - V));
    if (k < c.size()) prefix += c[k];
  }
  if (V > 0.0 && V < n) {
    const auto k = static_cast<std::size_t>(std::floor(V));
    double f = 0.0;
    for (std::size_t i = 0; i < k; ++i) f += c[i];
    f += (V - static_cast<double>(k)) * c[k];
    best = std::max(best, f);
  }
  return best;
}

namespace {

constexpr std::size_t kChunk = 4096;

double chunked_sum(std::size_t n, const std::function<double(std::size_t, std::size_t)>& part) {
  std::vector<double> parts(chunk_count(n, kChunk), 0.0);
  parallel_for(n, kChunk, [&](std::size_t b, std::size_t e) { parts[b / kChunk] = part(b, e); });
  return std::accumulate(parts.begin(), parts.end(), 0.0);
}

}  // namespace

RelaxedField relax(const Grid& fine, double v, const RelaxConfig& cfg) {
  if (!(v > 0.0)) throw InputError("volume must be positive");
  const int N = fine.dim;
  const double ratio = static_cast<double>(fine.size()) / static_cast<double>(cfg.max_cells);
  const double factor = ratio > 1.0 ? std::ceil(std::pow(ratio, 1.0 / N)) : 1.0;
  RelaxedField out{factor > 1.0 ? build_domain(fine.obstacle, N, fine.volume, fine.window_multiple,
                                               factor * fine.pitch, fine.center)
                                : fine,
                   {}, 0.0, 0.0, 0, false, 0.0};
  const Grid& g = out.grid;
  const Stencil st = crofton_stencil(g);
  const std::size_t n = g.size(), nd = st.offsets.size();
  const double hN1 = std::pow(g.pitch, N - 1);
  std::vector<double> w(nd);
  double L2 = 0.0;
  for (std::size_t d = 0; d < nd; ++d) {
    w[d] = st.weights[d] / hN1;
    L2 += 4.0 * w[d] * w[d];
  }
  const double mu =
      (cfg.volume_penalty > 0.0 ? cfg.volume_penalty : 4.0 * N * std::pow(v, -1.0 / N)) * g.pitch;
  const double V = v / g.cell_volume();
  const double tau = 0.99 / std::sqrt(L2), sigma = tau;

  // Edge (i, i + off_d) is active when neither end is obstacle and one end is free.
  std::vector<std::uint16_t> mask(n, 0);
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.labels[i] == Cell::kFree) free_idx.push_back(i);
    if (g.labels[i] == Cell::kObstacle) continue;
    for (std::size_t d = 0; d < nd; ++d) {
      const auto j = static_cast<std::ptrdiff_t>(i) + st.offsets[d];
      if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
      const Cell cj = g.labels[static_cast<std::size_t>(j)];
      if (cj == Cell::kObstacle) continue;
      if (g.labels[i] == Cell::kFree || cj == Cell::kFree) mask[i] |= std::uint16_t(1u << d);
    }
  }
  const std::size_t nf = free_idx.size();
  std::vector<double> u(n, 0.0), ubar(n, 0.0), p(n * nd, 0.0), z(nf), ktp(nf);
  const double u0 = std::min(1.0, V / static_cast<double>(nf));
  for (std::size_t i : free_idx) u[i] = ubar[i] = u0;

  auto mass_at = [&](double t) {
    return chunked_sum(nf, [&](std::size_t b, std::size_t e) {
      double s = 0.0;
      for (std::size_t k = b; k < e; ++k) s += std::clamp(z[k] - t, 0.0, 1.0);
      return s;
    });
  };
  auto active_at = [&](double t) {
    return chunked_sum(nf, [&](std::size_t b, std::size_t e) {
      double s = 0.0;
      for (std::size_t k = b; k < e; ++k) s += (z[k] - t > 0.0 && z[k] - t < 1.0) ? 1.0 : 0.0;
      return s;
    });
  };
  auto compute_ktp = [&] {
    parallel_for(nf, kChunk, [&](std::size_t b, std::size_t e) {
      for (std::size_t k = b; k < e; ++k) {
        const std::size_t i = free_idx[k];
        double s = 0.0;
        for (std::size_t d = 0; d < nd; ++d) {
          if (mask[i] >> d & 1u) s += w[d] * p[i * nd + d];
          const std::size_t j = i - static_cast<std::size_t>(st.offsets[d]);
          if (mask[j] >> d & 1u) s -= w[d] * p[j * nd + d];
        }
        ktp[k] = s;
      }
    });
  };
  auto primal_energy = [&] {
    const double tv = chunked_sum(n, [&](std::size_t b, std::size_t e) {
      double s = 0.0;
      for (std::size_t i = b; i < e; ++i) {
        if (!mask[i]) continue;
        for (std::size_t d = 0; d < nd; ++d)
          if (mask[i] >> d & 1u)
            s += w[d] * std::abs(u[i] - u[i + static_cast<std::size_t>(st.offsets[d])]);
      }
      return s;
    });
    double m = 0.0;
    for (std::size_t i : free_idx) m += u[i];
    return std::pair{tv + mu * std::abs(m - V), m};
  };

  double t = 0.0;  // warm start of the prox multiplier
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    parallel_for(n, kChunk, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        if (!mask[i]) continue;
        for (std::size_t d = 0; d < nd; ++d) {
          if (!(mask[i] >> d & 1u)) continue;
          double& q = p[i * nd + d];
          q = std::clamp(
              q + sigma * w[d] * (ubar[i] - ubar[i + static_cast<std::size_t>(st.offsets[d])]),
              -1.0, 1.0);
        }
      }
    });
    compute_ktp();
    for (std::size_t k = 0; k < nf; ++k) z[k] = u[free_idx[k]] - tau * ktp[k];

    // prox of tau (box + mu |sum - V|): u = clip(z - t) with t in [-tau mu, tau mu].
    const double tm = tau * mu;
    if (mass_at(tm) >= V) {
      t = tm;
    } else if (mass_at(-tm) <= V) {
      t = -tm;
    } else {
      double lo = -tm, hi = tm;
      t = std::clamp(t, lo, hi);
      for (int s = 0; s < 80 && hi - lo > 1e-15; ++s) {
        const double m = mass_at(t);
        if (std::abs(m - V) <= 1e-10 * std::max(1.0, V)) break;
        if (m > V)
          lo = t;
        else
          hi = t;
        const double slope = active_at(t);
        double next = slope > 0.0 ? t + (m - V) / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        t = next;
      }
    }
    for (std::size_t k = 0; k < nf; ++k) {
      const std::size_t i = free_idx[k];
      const double un = std::clamp(z[k] - t, 0.0, 1.0);
      ubar[i] = 2.0 * un - u[i];
      u[i] = un;
    }
    out.iterations = it;
    if (it % cfg.check_every == 0 || it == cfg.max_iterations) {
      auto [P, m] = primal_energy();
      compute_ktp();
      std::vector<double> c(nf);
      for (std::size_t k = 0; k < nf; ++k) c[k] = -ktp[k];
      const double gap = P + box_volume_conjugate(std::move(c), mu, V);
      out.gap = gap / std::max(P, 1e-12);
      out.energy = P * hN1;
      out.mass = m * g.cell_volume();
      if (out.gap <= cfg.gap_tolerance) {
        out.converged = true;
        break;
      }
    }
  }
  out.u = std::move(u);
  return out;
}

DiscreteSet threshold_field(const RelaxedField& field, const Grid& fine, std::size_t count) {
  const Grid& g = field.grid;
  const int N = fine.dim;
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < fine.size(); ++i)
    if (fine.labels[i] == Cell::kFree) free_idx.push_back(i);
  if (count > free_idx.size())
    throw Error(ErrorCode::kVolumeInfeasible, "not enough free cells for the target volume");
  // Multilinear interpolation over non-obstacle coarse cells, renormalized.
  std::vector<double> val(free_idx.size());
  for (std::size_t k = 0; k < free_idx.size(); ++k) {
    const Vector x = fine.cell_center(free_idx[k]);
    std::array<int, 3> base{0, 0, 0};
    std::array<double, 3> frac{0, 0, 0};
    for (int a = 0; a < N; ++a) {
      const double s = (x(a) - g.origin(a)) / g.pitch;
      const auto ua = static_cast<std::size_t>(a);
      base[ua] = std::clamp(static_cast<int>(std::floor(s)), 0, g.shape[ua] - 2);
      frac[ua] = std::clamp(s - base[ua], 0.0, 1.0);
    }
    double num = 0.0, den = 0.0;
    for (int corner = 0; corner < (1 << N); ++corner) {
      std::array<int, 3> c = base;
      double wt = 1.0;
      for (int a = 0; a < N; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        const bool up = corner >> a & 1;
        c[ua] += up;
        wt *= up ? frac[ua] : 1.0 - frac[ua];
      }
      const std::size_t ci = g.index(c[0], c[1], c[2]);
      if (g.labels[ci] == Cell::kObstacle) continue;
      num += wt * field.u[ci];
      den += wt;
    }
    val[k] = den > 0.0 ? num / den : 0.0;
  }
  std::vector<std::size_t> order(free_idx.size());
  std::iota(order.begin(), order.end(), 0);
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return val[a] != val[b] ? val[a] > val[b] : a < b;
                   });
  DiscreteSet E(fine.size());
  for (std::size_t k = 0; k < count; ++k) E.insert(free_idx[order[k]]);
  return E;
}

}  // namespace isores
