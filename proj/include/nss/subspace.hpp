#pragma once

#include <iosfwd>
#include <vector>

#include "nss/types.hpp"

namespace nss {

// One class's fitted affine subspace: mean u plus an orthonormal basis B of d
// columns. Classification uses the squared orthogonal distance
// ||(I - BB^T)(x - u)||^2.
struct SubspaceModel {
    Vector mean;   // ambient dimension D
    Matrix basis;  // D x d, orthonormal columns
    // Set when the class had fewer than d+1 points and the basis was padded
    // with null-space directions.
    bool degenerate = false;

    int dim() const { return static_cast<int>(basis.cols()); }
    int ambient_dim() const { return static_cast<int>(basis.rows()); }
};

// Least-squares fit: mean of the points plus the top-d eigenvectors of the
// centered scatter. Throws EmptyClass / BadDimension (d >= D or d < 1).
SubspaceModel fit_subspace(const Matrix& rows, int d);
SubspaceModel fit_subspace(const std::vector<Vector>& points, int d);

// Squared orthogonal distance, computed as ||x-u||^2 - ||B^T(x-u)||^2 so the
// DxD projector is never formed. Clamped to >= 0.
double residual(const Vector& x, const SubspaceModel& m);

// Residuals for every row at once; same values as the per-point overload.
Vector residuals(const Matrix& rows, const SubspaceModel& m);

// Sum of residuals of the points under the model (the fit objective).
double fit_objective(const Matrix& rows, const SubspaceModel& m);

// Orthonormality check on the basis (B^T B = I within tol).
void validate_subspace(const SubspaceModel& m, const Tolerances& tol = {});

// Flat text block: d, D, mean entries, basis entries column-major, all with
// 17 significant digits so round-trips are bit-lossless.
void write_subspace(std::ostream& os, const SubspaceModel& m);
SubspaceModel read_subspace(std::istream& is);

}  // namespace nss
