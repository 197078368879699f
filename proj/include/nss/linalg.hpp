#pragma once

#include <vector>

#include "nss/types.hpp"

namespace nss {

// Entrywise arithmetic mean. Throws EmptyClass on an empty collection and
// DimensionMismatch on mixed lengths.
Vector mean_vector(const std::vector<Vector>& points);
Vector mean_vector(const Matrix& rows);

// Scatter S = sum_i (x_i - center)(x_i - center)^T. Symmetric PSD by
// construction (upper triangle accumulated, then mirrored).
Matrix centered_scatter(const std::vector<Vector>& points, const Vector& center);
Matrix centered_scatter(const Matrix& rows, const Vector& center);

// The d largest eigenpairs of a symmetric matrix. Deterministic: eigenvalues
// descending, each eigenvector's largest-magnitude entry made positive.
// Throws NotSymmetric / BadDimension.
EigenPairs top_eigenpairs(const Matrix& S, int d, const Tolerances& tol = {});

namespace detail {
// Sign policy shared by every spectral routine: flip each column so its
// largest-magnitude entry (first such index on ties) is positive.
void canonicalize_column_signs(Matrix& vectors);
}  // namespace detail

}  // namespace nss
