#include "isores/linalg.hpp"

#include <vector>

namespace isores {

Matrix null_space(const Matrix& M, double rel_tol) {
  const Eigen::Index n = M.cols();
  if (M.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const Vector& s = svd.singularValues();
  const double cutoff = rel_tol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Matrix range_basis(const Matrix& M, double rel_tol) {
  const Eigen::Index n = M.rows();
  if (M.cols() == 0) return Matrix(n, 0);
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullU);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix(n, 0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

namespace {

Matrix canonical_from_projector(const Matrix& P, Eigen::Index k, int dim) {
  Matrix out(dim, k);
  std::vector<bool> used(dim, false);
  for (Eigen::Index c = 0; c < k; ++c) {
    int best = -1;
    double best_norm = -1.0;
    Vector best_vec;
    for (int i = 0; i < dim; ++i) {
      if (used[i]) continue;
      Vector r = P.col(i);
      for (Eigen::Index j = 0; j < c; ++j) r -= out.col(j).dot(r) * out.col(j);
      const double nr = r.norm();
      if (nr > best_norm + 1e-9) {
        best = i;
        best_norm = nr;
        best_vec = r;
      }
    }
    used[best] = true;
    out.col(c) = best_vec / best_norm;
  }
  return out;
}

}  // namespace

Matrix canonical_basis(const Matrix& U, int dim) {
  if (U.cols() == 0) return Matrix(dim, 0);
  const Matrix P = U * U.transpose();
  return canonical_from_projector(P, U.cols(), dim);
}

Matrix complement_basis(const Matrix& U, int dim) {
  const Eigen::Index k = dim - U.cols();
  if (k == 0) return Matrix(dim, 0);
  Matrix P = Matrix::Identity(dim, dim);
  if (U.cols() > 0) P -= U * U.transpose();
  return canonical_from_projector(P, k, dim);
}

bool is_orthonormal(const Matrix& U, double tol) {
  if (U.cols() == 0) return true;
  const Matrix G = U.transpose() * U;
  return (G - Matrix::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace isores
