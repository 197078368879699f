#pragma once

#include <Eigen/Dense>

#include "nss/errors.hpp"

namespace nss {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Default numerical tolerances. Fixed constants everywhere unless a caller
// overrides them explicitly.
struct Tolerances {
    double orthonormality = 1e-8;
    double eigen_residual = 1e-6;
    double symmetry = 1e-9;
};

// Top eigenpairs of a symmetric matrix: values sorted descending, one
// orthonormal column per value.
struct EigenPairs {
    Vector values;
    Matrix vectors;

    int count() const { return static_cast<int>(values.size()); }
};

bool all_finite(const Matrix& m);

// Throws NonFinite naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);

}  // namespace nss
