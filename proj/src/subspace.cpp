#include "nss/subspace.hpp"

#include <istream>
#include <ostream>

#include "nss/linalg.hpp"
#include "nss/textio.hpp"

namespace nss {

SubspaceModel fit_subspace(const Matrix& rows, int d) {
    if (rows.rows() == 0) throw EmptyClass("fit_subspace: no points");
    const int D = static_cast<int>(rows.cols());
    if (d < 1 || d >= D)
        throw BadDimension("fit_subspace: d=" + std::to_string(d) + " must satisfy 1 <= d < D=" +
                           std::to_string(D));

    SubspaceModel m;
    m.mean = mean_vector(rows);
    // The scatter's eigenbasis is complete even when rank-deficient, so a
    // class with fewer than d+1 points still yields d orthonormal columns;
    // the extras span the scatter's null space. Flag the fit as degenerate.
    m.basis = top_eigenpairs(centered_scatter(rows, m.mean), d).vectors;
    m.degenerate = rows.rows() < static_cast<Eigen::Index>(d) + 1;
    return m;
}

SubspaceModel fit_subspace(const std::vector<Vector>& points, int d) {
    if (points.empty()) throw EmptyClass("fit_subspace: no points");
    Matrix rows(static_cast<Eigen::Index>(points.size()), points.front().size());
    for (size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != points.front().size())
            throw DimensionMismatch("fit_subspace: mixed vector lengths");
        rows.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
    }
    return fit_subspace(rows, d);
}

double residual(const Vector& x, const SubspaceModel& m) {
    if (x.size() != m.mean.size())
        throw DimensionMismatch("residual: point has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(m.mean.size()));
    const Vector r = x - m.mean;
    const double value = r.squaredNorm() - (m.basis.transpose() * r).squaredNorm();
    return value < 0.0 ? 0.0 : value;
}

Vector residuals(const Matrix& rows, const SubspaceModel& m) {
    if (rows.cols() != m.mean.size())
        throw DimensionMismatch("residuals: points have dimension " + std::to_string(rows.cols()) +
                                ", model expects " + std::to_string(m.mean.size()));
    const Matrix centered = rows.rowwise() - m.mean.transpose();
    Vector out = centered.rowwise().squaredNorm() - (centered * m.basis).rowwise().squaredNorm();
    return out.cwiseMax(0.0);
}

double fit_objective(const Matrix& rows, const SubspaceModel& m) {
    return residuals(rows, m).sum();
}

void validate_subspace(const SubspaceModel& m, const Tolerances& tol) {
    const int d = m.dim();
    const Matrix gram = m.basis.transpose() * m.basis;
    const double err = (gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (err > tol.orthonormality)
        throw Error(ErrorClass::Numeric,
                    "subspace basis not orthonormal (max deviation " + std::to_string(err) + ")");
    if (d < 1 || d >= m.ambient_dim())
        throw BadDimension("subspace dim " + std::to_string(d) + " outside [1, D)");
}

void write_subspace(std::ostream& os, const SubspaceModel& m) {
    os << "d " << m.dim() << "\n";
    os << "D " << m.ambient_dim() << "\n";
    os << "mean";
    for (Eigen::Index i = 0; i < m.mean.size(); ++i) os << ' ' << fmt_g17(m.mean(i));
    os << "\nbasis";
    for (Eigen::Index j = 0; j < m.basis.cols(); ++j)
        for (Eigen::Index i = 0; i < m.basis.rows(); ++i) os << ' ' << fmt_g17(m.basis(i, j));
    os << "\n";
}

SubspaceModel read_subspace(std::istream& is) {
    auto expect = [&](const char* key) {
        std::string word;
        if (!(is >> word) || word != key)
            throw ParseError(std::string("model file: expected '") + key + "', got '" + word + "'");
    };
    SubspaceModel m;
    int d = 0, D = 0;
    expect("d");
    if (!(is >> d)) throw ParseError("model file: bad d");
    expect("D");
    if (!(is >> D)) throw ParseError("model file: bad D");
    if (d < 1 || D < 2 || d >= D) throw ParseError("model file: invalid dims");
    expect("mean");
    m.mean.resize(D);
    for (int i = 0; i < D; ++i)
        if (!(is >> m.mean(i))) throw ParseError("model file: truncated mean");
    expect("basis");
    m.basis.resize(D, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < D; ++i)
            if (!(is >> m.basis(i, j))) throw ParseError("model file: truncated basis");
    return m;
}

}  // namespace nss
