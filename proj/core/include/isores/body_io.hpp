#pragma once

#include <string>

#include "isores/convex.hpp"

namespace isores {

// Body files are JSON objects with a "kind" field:
//   hpoly       {dim, A: [[..]], b: [..]}                 {x : A x <= b}
//   halfspace   {normal: [..], offset}                    {x : n.x <= offset}
//   cylinder    {z_basis: [[..] per column], perp_basis?, cross_section: {A, b}}
//   paraboloid  {dim, curvature?}                         {x_N >= a |x'|^2}
//   ball        {center: [..], radius}
//   oracle-grid {dim, directions: [[..]], support: [h or null], interior_point?}
// oracle-grid is the outer polyhedron {u_i.x <= h_i} over finite h_i, exposed
// only through its support and membership oracles; null means +inf.
struct LoadedBody {
  ConvexBody body;
  std::string kind;
  std::string canonical;  // compact re-serialization of the input object
};

LoadedBody parse_body(const std::string& json_text);
LoadedBody load_body(const std::string& path);

// Polyhedral kinds only; oracles throw.
std::string body_to_json(const ConvexBody& body);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace isores
