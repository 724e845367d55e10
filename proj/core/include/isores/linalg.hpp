#pragma once

#include "isores/types.hpp"

namespace isores {

// Orthonormal basis (columns) of the null space of M; singular values at or
// below rel_tol * max(sigma) count as zero.
Matrix null_space(const Matrix& M, double rel_tol = 1e-10);

// Orthonormal basis of span(columns of M), rank decided as in null_space.
Matrix range_basis(const Matrix& M, double rel_tol = 1e-8);

// Orthonormal basis of the subspace spanned by the columns of the orthonormal
// matrix U, rebuilt from projected standard basis vectors so that coordinate
// subspaces come back as the coordinate axes.
Matrix canonical_basis(const Matrix& U, int dim);

// Canonical orthonormal basis of the orthogonal complement of span(U).
Matrix complement_basis(const Matrix& U, int dim);

bool is_orthonormal(const Matrix& U, double tol);

}  // namespace isores
