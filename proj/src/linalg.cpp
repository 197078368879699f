#include "nss/linalg.hpp"

#include <cmath>

namespace nss {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw NonFinite(std::string(what) + ": non-finite entry");
}

Vector mean_vector(const std::vector<Vector>& points) {
    if (points.empty()) throw EmptyClass("mean_vector: empty collection");
    const Eigen::Index dim = points.front().size();
    Vector sum = Vector::Zero(dim);
    for (const Vector& p : points) {
        if (p.size() != dim)
            throw DimensionMismatch("mean_vector: vector of length " + std::to_string(p.size()) +
                                    " in a collection of length " + std::to_string(dim));
        sum += p;
    }
    return sum / static_cast<double>(points.size());
}

Vector mean_vector(const Matrix& rows) {
    if (rows.rows() == 0) throw EmptyClass("mean_vector: empty collection");
    return rows.colwise().mean().transpose();
}

Matrix centered_scatter(const Matrix& rows, const Vector& center) {
    if (rows.rows() == 0) throw EmptyClass("centered_scatter: empty collection");
    if (rows.cols() != center.size())
        throw DimensionMismatch("centered_scatter: points have dimension " +
                                std::to_string(rows.cols()) + ", center has " +
                                std::to_string(center.size()));
    const Matrix centered = rows.rowwise() - center.transpose();
    Matrix scatter = Matrix::Zero(rows.cols(), rows.cols());
    scatter.selfadjointView<Eigen::Upper>().rankUpdate(centered.transpose());
    scatter.triangularView<Eigen::StrictlyLower>() = scatter.transpose();
    return scatter;
}

Matrix centered_scatter(const std::vector<Vector>& points, const Vector& center) {
    if (points.empty()) throw EmptyClass("centered_scatter: empty collection");
    Matrix rows(static_cast<Eigen::Index>(points.size()), points.front().size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != points.front().size())
            throw DimensionMismatch("centered_scatter: mixed vector lengths");
        rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return centered_scatter(rows, center);
}

void detail::canonicalize_column_signs(Matrix& vectors) {
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Eigen::Index imax = 0;
        vectors.col(j).cwiseAbs().maxCoeff(&imax);
        if (vectors(imax, j) < 0.0) vectors.col(j) = -vectors.col(j);
    }
}

EigenPairs top_eigenpairs(const Matrix& S, int d, const Tolerances& tol) {
    if (S.rows() != S.cols())
        throw NotSymmetric("top_eigenpairs: matrix is " + std::to_string(S.rows()) + "x" +
                           std::to_string(S.cols()));
    const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol.symmetry * scale)
        throw NotSymmetric("top_eigenpairs: asymmetry " + std::to_string(asym));
    const int D = static_cast<int>(S.rows());
    if (d < 1 || d > D)
        throw BadDimension("top_eigenpairs: d=" + std::to_string(d) + " outside [1, " +
                           std::to_string(D) + "]");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorClass::Numeric, "top_eigenpairs: eigendecomposition failed");

    // Eigen returns ascending order; flip to descending and keep the top d.
    EigenPairs out;
    out.values = solver.eigenvalues().reverse().head(d);
    out.vectors = solver.eigenvectors().rowwise().reverse().leftCols(d);
    detail::canonicalize_column_signs(out.vectors);
    return out;
}

}  // namespace nss
