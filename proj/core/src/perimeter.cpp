#include "isores/perimeter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isores/errors.hpp"

namespace isores {

namespace {

const std::vector<std::array<int, 3>>& directions(int dim) {
  static const std::vector<std::array<int, 3>> d2 = {{1, 0, 0},  {0, 1, 0},  {1, 1, 0},
                                                     {-1, 1, 0}, {2, 1, 0},  {1, 2, 0},
                                                     {-1, 2, 0}, {-2, 1, 0}};
  static const std::vector<std::array<int, 3>> d3 = [] {
    std::vector<std::array<int, 3>> out;
    for (int z = -1; z <= 1; ++z)
      for (int y = -1; y <= 1; ++y)
        for (int x = -1; x <= 1; ++x) {
          // one representative per +-pair: first nonzero coordinate positive
          const int first = x != 0 ? x : (y != 0 ? y : z);
          if (first > 0) out.push_back({x, y, z});
        }
    return out;
  }();
  return dim == 2 ? d2 : d3;
}

double norm(const std::array<int, 3>& d) {
  return std::sqrt(static_cast<double>(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]));
}

}  // namespace

std::vector<double> crofton_direction_measures(int dim) {
  const auto& dirs = directions(dim);
  std::vector<double> out(dirs.size());
  if (dim == 2) {
    // Voronoi arcs on the full circle; +d and -d have equal arcs.
    std::vector<std::pair<double, std::size_t>> ang;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const double t = std::atan2(dirs[i][1], dirs[i][0]);
      ang.emplace_back(t, i);
      ang.emplace_back(t > 0 ? t - std::numbers::pi : t + std::numbers::pi, i);
    }
    std::sort(ang.begin(), ang.end());
    const std::size_t n = ang.size();
    for (std::size_t k = 0; k < n; ++k) {
      double prev = ang[(k + n - 1) % n].first, next = ang[(k + 1) % n].first;
      if (k == 0) prev -= 2 * std::numbers::pi;
      if (k == n - 1) next += 2 * std::numbers::pi;
      // each undirected direction appears twice; average the two arcs
      out[ang[k].second] += 0.25 * (next - prev);
    }
    return out;
  }
  if (dim != 3) throw InputError("Crofton stencil needs dimension 2 or 3");
  // Solid angles of the spherical Voronoi cells of the 26 lattice directions.
  const double axis = 0.57525958, face = 0.46471332, body = 0.44228169;
  const double scale = 2.0 * std::numbers::pi / (3 * axis + 6 * face + 4 * body);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const int nz = (dirs[i][0] != 0) + (dirs[i][1] != 0) + (dirs[i][2] != 0);
    out[i] = scale * (nz == 1 ? axis : nz == 2 ? face : body);
  }
  return out;
}

Stencil crofton_stencil(const Grid& g) {
  Stencil s;
  s.dim = g.dim;
  s.dirs = directions(g.dim);
  const auto meas = crofton_direction_measures(g.dim);
  for (std::size_t i = 0; i < s.dirs.size(); ++i) {
    const double len = norm(s.dirs[i]);
    // Lines parallel to d through lattice points have spacing h / |d| (2D)
    // or cross-section h^2 / |d| (3D).
    const double w = g.dim == 2 ? 0.5 * meas[i] * g.pitch / len
                                : meas[i] * g.pitch * g.pitch / (std::numbers::pi * len);
    s.weights.push_back(w);
    s.offsets.push_back(s.dirs[i][0] * g.stride[0] + s.dirs[i][1] * g.stride[1] +
                        s.dirs[i][2] * g.stride[2]);
  }
  for (const Vector& nu : g.facet_normals) s.facet_scale.push_back(1.0 / planar_response(s, nu, g.pitch));
  return s;
}

double planar_response(const Stencil& s, const Vector& nu, double pitch) {
  double f = 0.0;
  for (std::size_t i = 0; i < s.dirs.size(); ++i) {
    double dot = 0.0;
    for (int a = 0; a < s.dim; ++a) dot += s.dirs[i][static_cast<std::size_t>(a)] * nu(a);
    f += s.weights[i] * std::abs(dot);
  }
  return f / std::pow(pitch, s.dim - 1);
}

namespace {

inline double obstacle_weight(const Grid& g, const Stencil& s, std::size_t j, double w) {
  if (g.facet.empty() || s.facet_scale.empty()) return w;
  const std::uint16_t f = g.facet[j];
  return f == Grid::kNoFacet ? w : w * s.facet_scale[f];
}

inline void add_pair(const Grid& g, const Stencil& s, const DiscreteSet& E, std::size_t j,
                     double w, PerimeterSplit& out) {
  if (E.in[j]) return;
  if (g.labels[j] == Cell::kObstacle)
    out.obstacle += obstacle_weight(g, s, j, w);
  else
    out.relative += w;
}

}  // namespace

PerimeterSplit perimeter_split(const DiscreteSet& E, const Grid& g, const Stencil& s,
                               const Box& box) {
  PerimeterSplit out;
  if (box.empty) return out;
  const std::size_t nd = s.offsets.size();
  for (int k = box.lo[2]; k <= box.hi[2]; ++k)
    for (int j = box.lo[1]; j <= box.hi[1]; ++j) {
      PerimeterSplit row;
      for (int i = box.lo[0]; i <= box.hi[0]; ++i) {
        const std::size_t idx = g.index(i, j, k);
        if (!E.in[idx]) continue;
        for (std::size_t d = 0; d < nd; ++d) {
          add_pair(g, s, E, idx + static_cast<std::size_t>(s.offsets[d]), s.weights[d], row);
          add_pair(g, s, E, idx - static_cast<std::size_t>(s.offsets[d]), s.weights[d], row);
        }
      }
      out.relative += row.relative;
      out.obstacle += row.obstacle;
    }
  return out;
}

PerimeterSplit perimeter_split(const DiscreteSet& E, const Grid& g, const Stencil& s) {
  return perimeter_split(E, g, s, bounding_box(E, g, 0));
}

double relative_perimeter(const DiscreteSet& E, const Grid& g) {
  return perimeter_split(E, g, crofton_stencil(g)).relative;
}

double obstacle_perimeter(const DiscreteSet& E, const Grid& g) {
  return perimeter_split(E, g, crofton_stencil(g)).obstacle;
}

PerimeterSplit flip_delta(const DiscreteSet& E, const Grid& g, const Stencil& s, std::size_t i) {
  PerimeterSplit d;
  const bool inside = E.in[i] != 0;
  for (std::size_t k = 0; k < s.offsets.size(); ++k) {
    const double w = s.weights[k];
    for (int sign : {1, -1}) {
      const std::size_t j = i + static_cast<std::size_t>(sign * s.offsets[k]);
      if (E.in[j]) {
        // pair (i, j) is cut exactly when i is outside E; the non-E side is i (free)
        d.relative += inside ? w : -w;
      } else {
        const double dw = inside ? -w : w;
        if (g.labels[j] == Cell::kObstacle)
          d.obstacle += obstacle_weight(g, s, j, dw);
        else
          d.relative += dw;
      }
    }
  }
  return d;
}

}  // namespace isores
