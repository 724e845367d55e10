#include "isores/body_io.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "isores/errors.hpp"

namespace isores {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
  if (!j.contains(name)) throw InputError(std::string("body file: missing field '") + name + "'");
  return j.at(name);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string("body file: ") + what + " must be a number");
  return j.get<double>();
}

Vector vec(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("body file: ") + what + " must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], what);
  return v;
}

Matrix rows(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string("body file: ") + what + " must be a non-empty array");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix M(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vec(j[r], what);
    if (static_cast<std::size_t>(row.size()) != cols)
      throw InputError(std::string("body file: ragged ") + what);
    M.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return M;
}

// Columns given as a list of vectors.
Matrix columns(const json& j, const char* what) { return rows(j, what).transpose(); }

int dimension(const json& j) {
  const double d = number(field(j, "dim"), "dim");
  if (d != std::floor(d) || d < 1 || d > 8) throw InputError("body file: dim must be an integer in [1, 8]");
  return static_cast<int>(d);
}

HPolyhedron hpoly_from(const json& j, std::optional<int> dim) {
  Matrix A = rows(field(j, "A"), "A");
  Vector b = vec(field(j, "b"), "b");
  if (A.rows() != b.size()) throw InputError("body file: A and b disagree in length");
  if (dim && A.cols() != *dim) throw InputError("body file: A has the wrong number of columns");
  return HPolyhedron(std::move(A), std::move(b));
}

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json rows_json(const Matrix& M) {
  json a = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) a.push_back(vec_json(M.row(r).transpose()));
  return a;
}

}  // namespace

LoadedBody parse_body(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("body file: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("body file: top level must be an object");
  const json& kj = field(j, "kind");
  if (!kj.is_string()) throw InputError("body file: kind must be a string");
  const std::string kind = kj.get<std::string>();
  const std::string canonical = j.dump();

  if (kind == "hpoly") {
    return {ConvexBody(hpoly_from(j, dimension(j))), kind, canonical};
  }
  if (kind == "halfspace") {
    return {ConvexBody(make_halfspace(vec(field(j, "normal"), "normal"),
                                      number(field(j, "offset"), "offset"))),
            kind, canonical};
  }
  if (kind == "cylinder") {
    Matrix Z = columns(field(j, "z_basis"), "z_basis");
    std::optional<Matrix> perp;
    if (j.contains("perp_basis")) perp = columns(j.at("perp_basis"), "perp_basis");
    HPolyhedron D = hpoly_from(field(j, "cross_section"), static_cast<int>(Z.rows() - Z.cols()));
    return {ConvexBody(CylinderBody(std::move(Z), std::move(D), std::move(perp))), kind, canonical};
  }
  if (kind == "paraboloid") {
    const double a = j.contains("curvature") ? number(j.at("curvature"), "curvature") : 1.0;
    if (!(a > 0.0)) throw InputError("body file: curvature must be positive");
    return {ConvexBody(make_paraboloid(dimension(j), a)), kind, canonical};
  }
  if (kind == "ball") {
    return {ConvexBody(make_ball_oracle(vec(field(j, "center"), "center"),
                                        number(field(j, "radius"), "radius"))),
            kind, canonical};
  }
  if (kind == "oracle-grid") {
    const int N = dimension(j);
    const Matrix U = rows(field(j, "directions"), "directions");
    const json& sj = field(j, "support");
    if (!sj.is_array() || sj.size() != static_cast<std::size_t>(U.rows()))
      throw InputError("body file: support must match directions");
    if (U.cols() != N) throw InputError("body file: directions have the wrong dimension");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < U.rows(); ++i)
      if (!sj[static_cast<std::size_t>(i)].is_null()) keep.push_back(i);
    if (keep.empty()) throw InputError("body file: oracle-grid needs a finite support value");
    Matrix A(static_cast<Eigen::Index>(keep.size()), N);
    Vector b(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const Vector u = U.row(keep[k]).transpose();
      if (u.norm() < 1e-12) throw InputError("body file: zero direction");
      A.row(static_cast<Eigen::Index>(k)) = u.transpose() / u.norm();
      b(static_cast<Eigen::Index>(k)) = number(sj[static_cast<std::size_t>(keep[k])], "support") / u.norm();
    }
    SupportOracle o = make_polyhedral_oracle(HPolyhedron(std::move(A), std::move(b)));
    if (j.contains("interior_point")) {
      Vector x = vec(j.at("interior_point"), "interior_point");
      if (x.size() != N || !o.contains(x)) throw InputError("body file: interior_point is not in the body");
      o.interior_point = x;
    }
    o.label = "oracle-grid";
    return {ConvexBody(std::move(o)), kind, canonical};
  }
  throw InputError("body file: unknown kind '" + kind + "'");
}

LoadedBody load_body(const std::string& path) { return parse_body(read_text_file(path)); }

std::string body_to_json(const ConvexBody& body) {
  json j;
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, HPolyhedron>) {
          j = {{"kind", "hpoly"}, {"dim", b.dim()}, {"A", rows_json(b.A())}, {"b", vec_json(b.b())}};
        } else if constexpr (std::is_same_v<T, HalfSpace>) {
          j = {{"kind", "halfspace"}, {"normal", vec_json(b.normal)}, {"offset", b.offset}};
        } else if constexpr (std::is_same_v<T, CylinderBody>) {
          j = {{"kind", "cylinder"},
               {"z_basis", rows_json(b.z_basis().transpose())},
               {"perp_basis", rows_json(b.perp_basis().transpose())},
               {"cross_section", {{"A", rows_json(b.cross_section().A())},
                                  {"b", vec_json(b.cross_section().b())}}}};
        } else {
          throw InputError("oracle bodies cannot be serialized");
        }
      },
      body.rep());
  return j.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace isores
