#pragma once

#include <functional>

#include "isores/convex.hpp"

namespace isores {

using Membership = std::function<bool(const Vector&)>;

// Two-sided Hausdorff distance between A ∩ B_R(center) and B ∩ B_R(center),
// estimated on a pitch-h probe grid. Throws Error(kDisjointFromWindow) when
// either set misses every probe point.
double local_hausdorff(const Membership& a, const Membership& b, int dim, double R, double h,
                       const Vector& center);

double local_hausdorff(const ConvexBody& a, const ConvexBody& b, double R, double h);
double local_hausdorff(const ConvexBody& a, const ConvexBody& b, double R, double h,
                       const Vector& center);

// Squared Euclidean distance transform (in cells) of a binary N-d array: for
// every cell, squared distance to the nearest cell with feature set.
std::vector<double> squared_distance_transform(const std::vector<unsigned char>& feature,
                                               const std::vector<int>& shape);

}  // namespace isores
