#include "isores/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isores/errors.hpp"
#include "isores/parallel.hpp"
#include "isores/profiles.hpp"

namespace isores {

double Grid::cell_volume() const { return std::pow(pitch, dim); }

std::array<int, 3> Grid::coords(std::size_t idx) const {
  const auto i = static_cast<std::ptrdiff_t>(idx);
  return {static_cast<int>(i % stride[1]), static_cast<int>((i / stride[1]) % shape[1]),
          static_cast<int>(i / stride[2])};
}

Vector Grid::cell_center(std::size_t idx) const {
  const auto c = coords(idx);
  Vector x(dim);
  for (int a = 0; a < dim; ++a) x(a) = origin(a) + pitch * c[static_cast<std::size_t>(a)];
  return x;
}

double snap_pitch(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("pitch must be positive");
  if (h < 1.0) return 1.0 / std::floor(1.0 / h + 1e-9);
  return std::ceil(h - 1e-9);
}

std::size_t cell_count(const Grid& g, double v) {
  return static_cast<std::size_t>(std::llround(v / g.cell_volume()));
}

Grid build_domain(const std::optional<ConvexBody>& obstacle, int dim, double v, double R,
                  double h, const std::optional<Vector>& center) {
  if (dim < 2 || dim > 3) throw InputError("grid dimension must be 2 or 3");
  if (obstacle && obstacle->dim() != dim) throw InputError("obstacle dimension mismatch");
  if (!(v > 0.0) || !std::isfinite(v)) throw InputError("volume must be positive");
  if (!(h > 0.0) || !std::isfinite(h)) throw InputError("pitch must be positive");
  const double R0 = SolverConstants::defaults(dim).R0;
  if (!(R >= R0 - 1e-12)) throw InputError("window multiple below R0 = " + std::to_string(R0));

  Grid g;
  g.dim = dim;
  g.pitch = h;
  g.volume = v;
  g.window_multiple = R;
  g.window_radius = R * std::pow(v, 1.0 / dim);
  g.center = center ? *center : Vector::Zero(dim);
  if (g.center.size() != dim) throw InputError("window center dimension mismatch");
  g.obstacle = obstacle;
  if (2.0 * g.window_radius / h > 512.0 * (1.0 + 1e-9))
    throw Error(ErrorCode::kResolutionOverflow,
                "window spans more than 512 cells per axis; increase the pitch");

  g.origin = Vector::Zero(dim);
  for (int a = 0; a < 3; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (a >= dim) {
      g.shape[ua] = 1;
      continue;
    }
    const double lo = std::floor((g.center(a) - g.window_radius) / h);
    const double hi = std::floor((g.center(a) + g.window_radius) / h);
    g.shape[ua] = static_cast<int>(hi - lo) + 1 + 2 * Grid::kMargin;
    g.origin(a) = (lo - Grid::kMargin + 0.5) * h;
  }
  g.stride = {1, g.shape[0], static_cast<std::ptrdiff_t>(g.shape[0]) * g.shape[1]};
  const std::size_t total =
      static_cast<std::size_t>(g.shape[0]) * static_cast<std::size_t>(g.shape[1]) *
      static_cast<std::size_t>(g.shape[2]);
  g.labels.assign(total, Cell::kOutside);

  // Polyhedral obstacles are tested row by row without allocation.
  std::optional<HPolyhedron> poly;
  if (obstacle) poly = obstacle->as_polyhedron();
  std::vector<double> rows, rhs;
  if (poly) {
    for (Eigen::Index i = 0; i < poly->num_constraints(); ++i) {
      for (int a = 0; a < dim; ++a) rows.push_back(poly->A()(i, a));
      rhs.push_back(poly->b()(i));
    }
  }
  if (poly) {
    if (poly->num_constraints() >= Grid::kNoFacet)
      throw InputError("obstacle has too many facets for the grid");
    g.facet.assign(total, Grid::kNoFacet);
    for (Eigen::Index i = 0; i < poly->num_constraints(); ++i)
      g.facet_normals.push_back(poly->A().row(i).transpose());
  }
  const double r2 = g.window_radius * g.window_radius;
  const std::size_t plane = static_cast<std::size_t>(g.stride[2]);
  std::vector<std::size_t> free_per_slab(static_cast<std::size_t>(g.shape[2]), 0);
  parallel_for(static_cast<std::size_t>(g.shape[2]), 1, [&](std::size_t k0, std::size_t k1) {
    Vector x(dim);
    for (std::size_t k = k0; k < k1; ++k) {
      std::size_t nfree = 0;
      for (std::size_t off = 0; off < plane; ++off) {
        const std::size_t idx = k * plane + off;
        const auto c = g.coords(idx);
        double d2 = 0.0;
        for (int a = 0; a < dim; ++a) {
          x(a) = g.origin(a) + h * c[static_cast<std::size_t>(a)];
          d2 += (x(a) - g.center(a)) * (x(a) - g.center(a));
        }
        bool blocked = false;
        if (poly) {
          double worst = -std::numeric_limits<double>::infinity();
          std::size_t nearest = 0;
          for (std::size_t i = 0; i < rhs.size(); ++i) {
            double s = -rhs[i];
            for (int a = 0; a < dim; ++a)
              s += rows[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] * x(a);
            if (s > worst) {
              worst = s;
              nearest = i;
            }
          }
          blocked = worst <= 0.0;
          if (blocked) g.facet[idx] = static_cast<std::uint16_t>(nearest);
        } else if (obstacle) {
          blocked = obstacle->contains(x);
        }
        if (blocked) {
          g.labels[idx] = Cell::kObstacle;
        } else if (d2 <= r2) {
          g.labels[idx] = Cell::kFree;
          ++nfree;
        }
      }
      free_per_slab[k] = nfree;
    }
  });
  for (std::size_t n : free_per_slab) g.free_cells += n;
  if (g.free_volume() <= v)
    throw Error(ErrorCode::kVolumeInfeasible,
                "free part of the window holds less than the requested volume");
  return g;
}

Box bounding_box(const DiscreteSet& E, const Grid& g, int pad) {
  Box b;
  b.lo = {g.shape[0], g.shape[1], g.shape[2]};
  b.hi = {-1, -1, -1};
  for (std::size_t i = 0; i < E.in.size(); ++i) {
    if (!E.in[i]) continue;
    const auto c = g.coords(i);
    for (std::size_t a = 0; a < 3; ++a) {
      b.lo[a] = std::min(b.lo[a], c[a]);
      b.hi[a] = std::max(b.hi[a], c[a]);
    }
    b.empty = false;
  }
  if (b.empty) return b;
  for (std::size_t a = 0; a < 3; ++a) {
    b.lo[a] = std::max(0, b.lo[a] - pad);
    b.hi[a] = std::min(g.shape[a] - 1, b.hi[a] + pad);
  }
  return b;
}

}  // namespace isores
