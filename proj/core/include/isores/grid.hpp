#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "isores/convex.hpp"

namespace isores {

enum class Cell : std::uint8_t { kOutside = 0, kFree = 1, kObstacle = 2 };

// Voxelized B_{R v^{1/N}}(center) \ C. Cell faces sit on integer multiples of
// the pitch; the array carries a margin of outside cells around the window.
struct Grid {
  int dim = 3;
  std::array<int, 3> shape{1, 1, 1};
  std::array<std::ptrdiff_t, 3> stride{1, 1, 1};
  double pitch = 1.0;
  Vector origin;  // center of cell (0, 0, 0)
  Vector center;  // window center
  double window_multiple = 0.0;
  double window_radius = 0.0;
  double volume = 0.0;  // the v the window was sized for
  std::vector<Cell> labels;
  std::size_t free_cells = 0;
  std::optional<ConvexBody> obstacle;
  // Polyhedral obstacles: nearest facet of each obstacle cell (kNoFacet
  // elsewhere) and the unit outward facet normals.
  std::vector<std::uint16_t> facet;
  std::vector<Vector> facet_normals;

  static constexpr std::uint16_t kNoFacet = 0xFFFF;
  static constexpr int kMargin = 3;

  std::size_t size() const { return labels.size(); }
  double cell_volume() const;
  double free_volume() const { return static_cast<double>(free_cells) * cell_volume(); }
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i + stride[1] * j + stride[2] * k);
  }
  std::array<int, 3> coords(std::size_t idx) const;
  Vector cell_center(std::size_t idx) const;
  bool is_free(std::size_t idx) const { return labels[idx] == Cell::kFree; }
};

// Membership over grid cells; cached cell count.
struct DiscreteSet {
  std::vector<std::uint8_t> in;
  std::size_t count = 0;

  DiscreteSet() = default;
  explicit DiscreteSet(std::size_t cells) : in(cells, 0) {}
  double volume(const Grid& g) const { return static_cast<double>(count) * g.cell_volume(); }
  void insert(std::size_t i) {
    if (!in[i]) {
      in[i] = 1;
      ++count;
    }
  }
  void erase(std::size_t i) {
    if (in[i]) {
      in[i] = 0;
      --count;
    }
  }
  bool operator==(const DiscreteSet& o) const { return count == o.count && in == o.in; }
};

// Requires R >= R0 and at most 512 cells across the window.
Grid build_domain(const std::optional<ConvexBody>& obstacle, int dim, double v, double R,
                  double h, const std::optional<Vector>& center = std::nullopt);

// Pitch no finer than h that divides 1 (h < 1) or is an integer (h >= 1), so
// unit-scale obstacles align with cell faces.
double snap_pitch(double h);

// Target cell count for volume v.
std::size_t cell_count(const Grid& g, double v);

// Inclusive bounding box of the set's cells, grown by pad and clipped to the array.
struct Box {
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  bool empty = true;
};
Box bounding_box(const DiscreteSet& E, const Grid& g, int pad);

}  // namespace isores
