#include "nss/classifiers.hpp"

#include <algorithm>
#include <cmath>

#include "nss/linalg.hpp"
#include "nss/rng.hpp"

namespace nss {

std::vector<int> NssModel::degenerate_classes() const {
    std::vector<int> out;
    for (int k = 0; k < num_classes(); ++k)
        if (subspaces[static_cast<size_t>(k)].degenerate) out.push_back(k + 1);
    return out;
}

NssModel nss_fit(const LabeledDataset& data, int d) {
    data.require_all_classes_nonempty();
    if (d < 1 || d >= data.dim())
        throw BadDimension("nss_fit: d=" + std::to_string(d) + " must satisfy 1 <= d < D=" +
                           std::to_string(data.dim()));
    NssModel m;
    m.subspaces.reserve(static_cast<size_t>(data.num_classes));
    for (int k = 1; k <= data.num_classes; ++k)
        m.subspaces.push_back(fit_subspace(data.class_rows(k), d));
    return m;
}

int nss_predict(const NssModel& m, const Vector& x) {
    int best = 1;
    double best_res = residual(x, m.subspaces.front());
    for (int k = 2; k <= m.num_classes(); ++k) {
        double r = residual(x, m.subspaces[static_cast<size_t>(k - 1)]);
        if (r < best_res) {
            best_res = r;
            best = k;
        }
    }
    return best;
}

std::vector<int> nss_predict_all(const NssModel& m, const Matrix& rows) {
    const auto n = rows.rows();
    Matrix res(n, m.num_classes());
    for (int k = 0; k < m.num_classes(); ++k)
        res.col(k) = residuals(rows, m.subspaces[static_cast<size_t>(k)]);
    std::vector<int> out(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        int best = 0;
        for (int k = 1; k < m.num_classes(); ++k)
            if (res(i, k) < res(i, best)) best = k;
        out[static_cast<size_t>(i)] = best + 1;
    }
    return out;
}

Vector nss_residuals(const NssModel& m, const Vector& x) {
    Vector out(m.num_classes());
    for (int k = 0; k < m.num_classes(); ++k)
        out(k) = residual(x, m.subspaces[static_cast<size_t>(k)]);
    return out;
}

double CvReport::mean_accuracy(int candidate_index) const {
    const auto& accs = fold_accuracies[static_cast<size_t>(candidate_index)];
    double sum = 0.0;
    for (double a : accs) sum += a;
    return sum / static_cast<double>(accs.size());
}

std::vector<int> default_cv_grid(int D) {
    std::vector<int> grid = {1, 2, 3, 5, 8, 12, 20, D / 2};
    std::vector<int> out;
    for (int d : grid)
        if (d >= 1 && d <= D - 1) out.push_back(d);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CvReport nss_cross_validate(const LabeledDataset& data, std::vector<int> candidate_dims, int folds,
                            std::uint64_t seed) {
    if (candidate_dims.empty()) throw BadDimension("nss_cross_validate: no candidate dims");
    std::sort(candidate_dims.begin(), candidate_dims.end());
    candidate_dims.erase(std::unique(candidate_dims.begin(), candidate_dims.end()),
                         candidate_dims.end());
    for (int d : candidate_dims)
        if (d < 1 || d >= data.dim())
            throw BadDimension("nss_cross_validate: candidate d=" + std::to_string(d) +
                               " must satisfy 1 <= d < D=" + std::to_string(data.dim()));

    const auto fold_of = stratified_fold_assignment(data, folds, seed);
    const int dmax = candidate_dims.back();
    const size_t n_cand = candidate_dims.size();
    const int K = data.num_classes;

    CvReport report;
    report.candidate_dims = candidate_dims;
    report.fold_accuracies.assign(n_cand, std::vector<double>(static_cast<size_t>(folds), 0.0));

    for (int f = 0; f < folds; ++f) {
        std::vector<int> train_rows, val_rows;
        for (int i = 0; i < data.n(); ++i)
            (fold_of[static_cast<size_t>(i)] == f ? val_rows : train_rows).push_back(i);
        const LabeledDataset train = subset(data, train_rows);

        // One fit per class at the largest candidate; the top-d eigenvectors
        // for a smaller d are a prefix of the same decomposition, so every
        // candidate's residuals come from truncated column sums.
        std::vector<SubspaceModel> models;
        models.reserve(static_cast<size_t>(K));
        for (int k = 1; k <= K; ++k) models.push_back(fit_subspace(train.class_rows(k), dmax));

        std::vector<long> correct(n_cand, 0);
        for (int row : val_rows) {
            const Vector x = data.samples.row(row).transpose();
            const int truth = data.labels[static_cast<size_t>(row)];
            // residual at candidate c for class k
            std::vector<double> best(n_cand, 0.0);
            std::vector<int> best_k(n_cand, 0);
            for (int k = 0; k < K; ++k) {
                const Vector r = x - models[static_cast<size_t>(k)].mean;
                const Vector proj = models[static_cast<size_t>(k)].basis.transpose() * r;
                double reduced = r.squaredNorm();
                size_t c = 0;
                for (int j = 0; j < dmax && c < n_cand; ++j) {
                    reduced -= proj(j) * proj(j);
                    while (c < n_cand && candidate_dims[c] == j + 1) {
                        double res = std::max(reduced, 0.0);
                        if (k == 0 || res < best[c]) {
                            best[c] = res;
                            best_k[c] = k;
                        }
                        ++c;
                    }
                }
            }
            for (size_t c = 0; c < n_cand; ++c)
                if (best_k[c] + 1 == truth) ++correct[c];
        }
        for (size_t c = 0; c < n_cand; ++c)
            report.fold_accuracies[c][static_cast<size_t>(f)] =
                val_rows.empty() ? 0.0
                                 : static_cast<double>(correct[c]) /
                                       static_cast<double>(val_rows.size());
    }

    report.chosen_dim = report.candidate_dims.front();
    double best_mean = report.mean_accuracy(0);
    for (size_t c = 1; c < n_cand; ++c) {
        double mean = report.mean_accuracy(static_cast<int>(c));
        if (mean > best_mean) {
            best_mean = mean;
            report.chosen_dim = report.candidate_dims[c];
        }
    }
    return report;
}

LdaModel lda_fit(const LabeledDataset& data) {
    data.require_all_classes_nonempty();
    const int K = data.num_classes;
    const int D = data.dim();
    const int n = data.n();
    if (n <= K) throw SingularCovariance("lda_fit: need more samples than classes");

    LdaModel m;
    m.class_means.reserve(static_cast<size_t>(K));
    m.log_priors.reserve(static_cast<size_t>(K));
    Matrix pooled = Matrix::Zero(D, D);
    for (int k = 1; k <= K; ++k) {
        const Matrix rows = data.class_rows(k);
        const Vector mu = mean_vector(rows);
        pooled += centered_scatter(rows, mu);
        m.class_means.push_back(mu);
        m.log_priors.push_back(std::log(static_cast<double>(rows.rows()) / n));
    }
    pooled /= static_cast<double>(n - K);

    Eigen::SelfAdjointEigenSolver<Matrix> solver(pooled);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorClass::Numeric, "lda_fit: eigendecomposition failed");
    const Vector evals = solver.eigenvalues();
    const double lo = evals.minCoeff(), hi = evals.maxCoeff();
    if (lo <= 0.0 || hi / lo > 1e12)
        throw SingularCovariance(
            "pooled covariance is not positive definite (condition number above 1e12); "
            "reduce the ambient dimension first");
    m.pooled_covariance_inverse =
        solver.eigenvectors() * evals.cwiseInverse().asDiagonal() * solver.eigenvectors().transpose();
    return m;
}

namespace {

// Columns: Sigma^-1 mu_k. Offsets: -mu_k^T Sigma^-1 mu_k / 2 + log pi_k.
std::pair<Matrix, Vector> lda_discriminant(const LdaModel& m) {
    const int K = m.num_classes();
    Matrix weights(m.ambient_dim(), K);
    Vector offsets(K);
    for (int k = 0; k < K; ++k) {
        weights.col(k) = m.pooled_covariance_inverse * m.class_means[static_cast<size_t>(k)];
        offsets(k) = -0.5 * m.class_means[static_cast<size_t>(k)].dot(weights.col(k)) +
                     m.log_priors[static_cast<size_t>(k)];
    }
    return {std::move(weights), std::move(offsets)};
}

}  // namespace

int lda_predict(const LdaModel& m, const Vector& x) {
    if (x.size() != m.ambient_dim())
        throw DimensionMismatch("lda_predict: dimension mismatch");
    const auto [weights, offsets] = lda_discriminant(m);
    const Vector scores = weights.transpose() * x + offsets;
    int best = 0;
    for (int k = 1; k < m.num_classes(); ++k)
        if (scores(k) > scores(best)) best = k;
    return best + 1;
}

std::vector<int> lda_predict_all(const LdaModel& m, const Matrix& rows) {
    if (rows.cols() != m.ambient_dim())
        throw DimensionMismatch("lda_predict: dimension mismatch");
    const auto [weights, offsets] = lda_discriminant(m);
    const Matrix scores = (rows * weights).rowwise() + offsets.transpose();
    std::vector<int> out(static_cast<size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        int best = 0;
        for (int k = 1; k < m.num_classes(); ++k)
            if (scores(i, k) > scores(i, best)) best = k;
        out[static_cast<size_t>(i)] = best + 1;
    }
    return out;
}

CentroidModel centroid_fit(const LabeledDataset& data) {
    data.require_all_classes_nonempty();
    CentroidModel m;
    for (int k = 1; k <= data.num_classes; ++k) m.means.push_back(mean_vector(data.class_rows(k)));
    return m;
}

int centroid_predict(const CentroidModel& m, const Vector& x) {
    if (x.size() != m.ambient_dim())
        throw DimensionMismatch("centroid_predict: dimension mismatch");
    int best = 0;
    double best_dist = (x - m.means.front()).squaredNorm();
    for (int k = 1; k < m.num_classes(); ++k) {
        double dist = (x - m.means[static_cast<size_t>(k)]).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best = k;
        }
    }
    return best + 1;
}

std::vector<int> centroid_predict_all(const CentroidModel& m, const Matrix& rows) {
    std::vector<int> out(static_cast<size_t>(rows.rows()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i)
        out[static_cast<size_t>(i)] = centroid_predict(m, rows.row(i).transpose());
    return out;
}

}  // namespace nss
