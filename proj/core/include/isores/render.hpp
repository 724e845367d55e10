#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isores/grid.hpp"
#include "isores/profiles.hpp"
#include "isores/residue.hpp"

namespace isores {

// Binary PGM (P5) of the cell layer k (3D grids; ignored in 2D). Gray
// levels: set 0, obstacle 128, outside the window 224, free 255. Rows run
// from high to low second coordinate so the image is upright.
std::string render_slice(const DiscreteSet& E, const Grid& g, int k);

// Layer index of the cell plane containing height z in 3D.
int slice_index(const Grid& g, double z);

struct LoglogOptions {
  int width = 640;
  int height = 480;
  std::string title;
  // Improved exponent drawn dotted when set.
  std::optional<double> envelope_exponent;
};

// Log-log scatter of residue against volume with the fitted line and the
// reference slopes d*/2N and d*/N as dashed lines through the data centroid.
std::string render_loglog(const std::vector<ProfilePoint>& points, const ScalingFit& fit, int dstar,
                          int dim, const LoglogOptions& opt = {});

}  // namespace isores
