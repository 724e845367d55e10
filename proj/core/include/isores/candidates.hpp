#pragma once

#include <string>
#include <vector>

#include "isores/grid.hpp"

namespace isores {

struct Candidate {
  std::string label;
  DiscreteSet set;
};

// The `count` free cells nearest to center.
DiscreteSet candidate_ball(const Grid& g, const Vector& center, std::size_t count);

// Digitized half-ball sitting on a flat piece of the obstacle boundary.
// normal is the unit outward normal of C at anchor. Throws kNoFacet when there
// is no obstacle and kInsufficientFlatArea when the boundary is not flat
// under the half-ball.
DiscreteSet candidate_halfball(const Grid& g, const Vector& anchor, const Vector& normal,
                               std::size_t count);

// Ball B_r(q + r n) with q = anchor - depth n and r chosen so that exactly
// `count` free cells are captured (depth 0 is tangent, depth > 0 wraps
// around the obstacle).
DiscreteSet candidate_tangent_ball(const Grid& g, const Vector& anchor, const Vector& normal,
                                   double depth, std::size_t count);

// Tangent ball at the automatically chosen anchor nearest the window center.
DiscreteSet candidate_tangent_ball(const Grid& g, std::size_t count);

// Plain ball, half-balls on each facet meeting the window, and tangent or
// penetrating balls at several depths.
std::vector<Candidate> generate_candidates(const Grid& g, std::size_t count);

// Boundary point of C near the window center with its outward normal.
std::pair<Vector, Vector> boundary_anchor(const Grid& g);

}  // namespace isores
