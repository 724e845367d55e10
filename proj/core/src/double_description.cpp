#include "isores/double_description.hpp"

#include <bit>
#include <cstdint>
#include <utility>

#include "isores/errors.hpp"
#include "isores/linalg.hpp"

namespace isores {

double GeneratorRep::support(const Vector& u, double slack) const {
  for (const Vector& r : rays)
    if (u.dot(r) > slack) return kInf;
  double best = -kInf;
  for (const Vector& v : vertices) best = std::max(best, u.dot(v));
  return best;
}

namespace dd {
namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vector y;
  Bitset zero;
};

}  // namespace

std::vector<Vector> extreme_rays(const Matrix& H_in, double tol) {
  const Eigen::Index d = H_in.cols();
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < H_in.rows(); ++i)
    if (H_in.row(i).norm() > 0.0) rows.push_back(i);
  const std::size_t m = rows.size();
  Matrix H(static_cast<Eigen::Index>(m), d);
  for (std::size_t i = 0; i < m; ++i) {
    H.row(static_cast<Eigen::Index>(i)) = H_in.row(rows[i]) / H_in.row(rows[i]).norm();
  }

  // Greedy choice of d independent rows for the starting simplicial cone.
  std::vector<std::size_t> init;
  std::vector<bool> in_init(m, false);
  Matrix Q(d, 0);
  for (std::size_t i = 0; i < m && static_cast<Eigen::Index>(init.size()) < d; ++i) {
    Vector r = H.row(static_cast<Eigen::Index>(i)).transpose();
    for (Eigen::Index j = 0; j < Q.cols(); ++j) r -= Q.col(j).dot(r) * Q.col(j);
    if (r.norm() > 1e-7) {
      Q.conservativeResize(d, Q.cols() + 1);
      Q.col(Q.cols() - 1) = r / r.norm();
      init.push_back(i);
      in_init[i] = true;
    }
  }
  if (static_cast<Eigen::Index>(init.size()) < d)
    throw Error(ErrorCode::kDegenerateBody, "cone is not pointed");

  Matrix HI(d, d);
  for (Eigen::Index j = 0; j < d; ++j) HI.row(j) = H.row(static_cast<Eigen::Index>(init[j]));
  const Matrix R = -HI.fullPivLu().solve(Matrix::Identity(d, d));

  std::vector<Ray> rays;
  for (Eigen::Index j = 0; j < d; ++j) {
    Ray ray{R.col(j).normalized(), Bitset(m)};
    for (Eigen::Index k = 0; k < d; ++k)
      if (k != j) ray.zero.set(init[k]);
    rays.push_back(std::move(ray));
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (in_init[i]) continue;
    const auto h = H.row(static_cast<Eigen::Index>(i));
    std::vector<double> s(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = h.dot(rays[r].y);
      if (s[r] > tol) {
        pos.push_back(r);
      } else if (s[r] < -tol) {
        neg.push_back(r);
        next.push_back(rays[r]);
      } else {
        Ray z = rays[r];
        z.zero.set(i);
        next.push_back(std::move(z));
      }
    }
    if (pos.empty()) {
      rays = std::move(next);
      continue;
    }
    const std::size_t need = d >= 2 ? static_cast<std::size_t>(d - 2) : 0;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bitset common = rays[p].zero & rays[n].zero;
        if (common.count() < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vector y = s[p] * rays[n].y - s[n] * rays[p].y;
        const double ny = y.norm();
        if (ny <= 0.0) continue;
        common.set(i);
        next.push_back(Ray{y / ny, std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<Vector> out;
  out.reserve(rays.size());
  for (Ray& r : rays) out.push_back(std::move(r.y));
  return out;
}

GeneratorRep h_to_v(const Matrix& A_in, const Vector& b_in, double tol) {
  const Eigen::Index N = A_in.cols();
  GeneratorRep out;
  out.dim = static_cast<int>(N);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < A_in.rows(); ++i) {
    const double n = A_in.row(i).norm();
    if (n > 0.0) {
      keep.push_back(i);
    } else if (b_in(i) < -tol) {
      return out;  // 0 <= b_i violated: empty
    }
  }
  Matrix A(static_cast<Eigen::Index>(keep.size()), N);
  Vector b(static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double n = A_in.row(keep[k]).norm();
    A.row(static_cast<Eigen::Index>(k)) = A_in.row(keep[k]) / n;
    b(static_cast<Eigen::Index>(k)) = b_in(keep[k]) / n;
  }

  const Matrix L = canonical_basis(null_space(A), static_cast<int>(N));
  if (L.cols() == N) {
    out.vertices.push_back(Vector::Zero(N));
  } else {
    const Matrix B = complement_basis(L, static_cast<int>(N));
    const Eigen::Index n = B.cols();
    Matrix Hc(A.rows() + 1, n + 1);
    Hc.topLeftCorner(A.rows(), n) = A * B;
    Hc.topRightCorner(A.rows(), 1) = -b;
    Hc.bottomRows(1).setZero();
    Hc(A.rows(), n) = -1.0;
    for (const Vector& ray : extreme_rays(Hc, tol)) {
      const double t = ray(n);
      const Vector y = B * ray.head(n);
      if (t > tol) {
        out.vertices.push_back(y / t);
      } else {
        const double ny = y.norm();
        if (ny > tol) out.rays.push_back(y / ny);
      }
    }
  }
  for (Eigen::Index j = 0; j < L.cols(); ++j) {
    out.rays.push_back(L.col(j));
    out.rays.push_back(-L.col(j));
  }
  return out;
}

HalfspaceRep v_to_h(const std::vector<Vector>& vertices, const std::vector<Vector>& rays,
                    int dim, double tol) {
  if (vertices.empty()) throw InputError("v_to_h needs at least one vertex");
  Matrix H(static_cast<Eigen::Index>(vertices.size() + rays.size()), dim + 1);
  Eigen::Index row = 0;
  for (const Vector& v : vertices) {
    H.row(row).head(dim) = v.transpose();
    H(row, dim) = -1.0;
    ++row;
  }
  for (const Vector& r : rays) {
    H.row(row).head(dim) = r.transpose();
    H(row, dim) = 0.0;
    ++row;
  }
  std::vector<Vector> facets;
  try {
    facets = extreme_rays(H, tol);
  } catch (const Error&) {
    throw Error(ErrorCode::kDegenerateBody, "generated set is not full-dimensional");
  }
  HalfspaceRep out;
  out.A.resize(0, dim);
  out.b.resize(0);
  for (const Vector& f : facets) {
    const double na = f.head(dim).norm();
    if (na <= tol) continue;
    out.A.conservativeResize(out.A.rows() + 1, dim);
    out.b.conservativeResize(out.b.size() + 1);
    out.A.row(out.A.rows() - 1) = f.head(dim).transpose() / na;
    out.b(out.b.size() - 1) = f(dim) / na;
  }
  return out;
}

LpResult maximize(const Matrix& A, const Vector& b, const Vector& c, double tol) {
  LpResult res;
  const GeneratorRep g = h_to_v(A, b, tol);
  if (g.vertices.empty()) return res;
  const double scale = std::max(1.0, c.norm());
  for (const Vector& r : g.rays) {
    if (c.dot(r) > tol * scale) {
      res.status = LpStatus::kUnbounded;
      res.value = kInf;
      return res;
    }
  }
  res.status = LpStatus::kOptimal;
  res.value = -kInf;
  for (const Vector& v : g.vertices) {
    const double val = c.dot(v);
    if (val > res.value) {
      res.value = val;
      res.argmax = v;
    }
  }
  return res;
}

}  // namespace dd
}  // namespace isores
