#include "nss/risklab.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "nss/errors.hpp"
#include "nss/textio.hpp"

namespace nss {

GaussianBayesRule::GaussianBayesRule(const GaussianMixtureSpec& spec) {
    spec.validate();
    const int D = spec.dim();
    for (int k = 0; k < spec.num_classes(); ++k) {
        Eigen::LLT<Matrix> llt(spec.covariances[k]);
        if (llt.info() != Eigen::Success)
            throw SingularCovariance("mixture covariance is not positive definite");
        const Matrix lower = llt.matrixL();
        double log_det = 0.0;
        for (int i = 0; i < D; ++i) log_det += 2.0 * std::log(lower(i, i));
        means_.push_back(spec.means[k]);
        chol_lower_.push_back(lower);
        log_norm_.push_back(std::log(spec.priors[k]) -
                            0.5 * (D * std::log(2.0 * std::numbers::pi) + log_det));
    }
}

int GaussianBayesRule::predict(const Vector& x) const {
    if (x.size() != means_.front().size())
        throw DimensionMismatch("point has wrong dimension for the mixture");
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < means_.size(); ++k) {
        const Vector z = chol_lower_[k].triangularView<Eigen::Lower>().solve(x - means_[k]);
        const double score = log_norm_[k] - 0.5 * z.squaredNorm();
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(k);
        }
    }
    return best + 1;
}

std::vector<int> GaussianBayesRule::predict_all(const Matrix& rows) const {
    std::vector<int> out(static_cast<size_t>(rows.rows()));
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
        out[static_cast<size_t>(r)] = predict(rows.row(r).transpose());
    return out;
}

int bayes_predict(const GaussianMixtureSpec& spec, const Vector& x) {
    return GaussianBayesRule(spec).predict(x);
}

std::vector<int> bayes_predict_all(const GaussianMixtureSpec& spec, const Matrix& rows) {
    return GaussianBayesRule(spec).predict_all(rows);
}

int bayes_predict(const SubspaceFamilySpec& spec, const Vector& x) {
    if (!spec.orthogonal_mode())
        throw UnsupportedFamily("Bayes rule requires an orthogonal-noise family");
    if (x.size() != spec.ambient_dim) throw DimensionMismatch("point has wrong dimension");
    // Densities share the same constant, so argmax g_k reduces to argmin of
    // the squared subspace distance over in-support classes; comparing
    // distances avoids exp underflow far from the subspaces.
    int best = 0;
    double best_t = std::numeric_limits<double>::infinity();
    for (int k = 0; k < spec.num_classes; ++k) {
        const Vector y = x - spec.centers[k];
        const Vector coords = spec.bases[k].transpose() * y;
        if (coords.norm() > spec.ball_radius) continue;
        const double t = std::max(y.squaredNorm() - coords.squaredNorm(), 0.0);
        if (t < best_t) {
            best_t = t;
            best = k;
        }
    }
    return best + 1;
}

std::vector<int> bayes_predict_all(const SubspaceFamilySpec& spec, const Matrix& rows) {
    std::vector<int> out(static_cast<size_t>(rows.rows()));
    for (Eigen::Index r = 0; r < rows.rows(); ++r)
        out[static_cast<size_t>(r)] = bayes_predict(spec, rows.row(r).transpose());
    return out;
}

double empirical_risk(const std::vector<int>& predicted, const std::vector<int>& truth) {
    return risk_with_stderr(predicted, truth).risk;
}

RiskEstimate risk_with_stderr(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size())
        throw DimensionMismatch("prediction and truth lengths differ");
    if (predicted.empty()) throw EmptyClass("empirical risk of an empty sample");
    const int n = static_cast<int>(predicted.size());
    int errors = 0;
    for (int i = 0; i < n; ++i) errors += predicted[i] != truth[i];
    RiskEstimate est;
    est.n = n;
    est.risk = static_cast<double>(errors) / n;
    est.stderr_ = std::sqrt(std::max(est.risk * (1.0 - est.risk), 0.0) / n);
    return est;
}

SubspaceFamilySpec plugin_family(const SubspaceFamilySpec& truth, const NssModel& fitted) {
    if (!truth.orthogonal_mode())
        throw UnsupportedFamily("plug-in densities require an orthogonal-noise family");
    if (fitted.num_classes() != truth.num_classes)
        throw DimensionMismatch("fitted model has a different number of classes");
    if (fitted.ambient_dim() != truth.ambient_dim || fitted.dim() != truth.intrinsic_dim)
        throw DimensionMismatch("fitted model has different dimensions");
    SubspaceFamilySpec plug = truth;
    plug.min_angle = 0.0;  // fitted subspaces carry no angle guarantee
    for (int k = 0; k < truth.num_classes; ++k) {
        plug.centers[k] = fitted.subspaces[static_cast<size_t>(k)].mean;
        plug.bases[k] = fitted.subspaces[static_cast<size_t>(k)].basis;
    }
    plug.validate();
    return plug;
}

Lemma1Estimate lemma1_bound(const SubspaceFamilySpec& truth, const NssModel& fitted,
                            int mc_samples, std::uint64_t seed) {
    if (mc_samples < 2) throw BadDimension("need at least two Monte Carlo samples");
    const SubspaceFamilySpec plug = plugin_family(truth, fitted);
    const int K = truth.num_classes;
    const int half = mc_samples / 2;

    double bound = 0.0;
    double var_sum = 0.0;
    for (int k = 1; k <= K; ++k) {
        // x ~ (g + ghat)/2 via equal halves; E[2|g-ghat|/(g+ghat)] = L1 distance.
        const Matrix from_truth = sample_subspace_class(truth, k, half, derive_seed(seed, 2 * k));
        const Matrix from_plug = sample_subspace_class(plug, k, half, derive_seed(seed, 2 * k + 1));
        double sum = 0.0, sum_sq = 0.0;
        auto accumulate = [&](const Matrix& rows) {
            for (Eigen::Index r = 0; r < rows.rows(); ++r) {
                const Vector x = rows.row(r).transpose();
                const double g = class_density(truth, k, x);
                const double h = class_density(plug, k, x);
                const double w = (g + h) > 0.0 ? 2.0 * std::abs(g - h) / (g + h) : 0.0;
                sum += w;
                sum_sq += w * w;
            }
        };
        accumulate(from_truth);
        accumulate(from_plug);
        const int m = 2 * half;
        const double mean = sum / m;
        const double var = std::max(sum_sq / m - mean * mean, 0.0) / m;
        bound += mean;
        var_sum += var;
    }
    Lemma1Estimate est;
    est.samples_per_class = 2 * half;
    est.bound = bound / K;
    est.stderr_ = std::sqrt(var_sum) / K;
    return est;
}

RiskReport risk_report(const SubspaceFamilySpec& truth, const NssModel& fitted,
                       const LabeledDataset& test, int mc_samples, std::uint64_t seed) {
    RiskReport report;
    const std::vector<int> pred_fit = nss_predict_all(fitted, test.samples);
    const std::vector<int> pred_bayes = bayes_predict_all(truth, test.samples);
    report.fitted = risk_with_stderr(pred_fit, test.labels);
    report.bayes = risk_with_stderr(pred_bayes, test.labels);
    // Paired differences shrink the variance of the gap estimate.
    const int n = report.fitted.n;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double diff = (pred_fit[i] != test.labels[static_cast<size_t>(i)]) -
                            (pred_bayes[i] != test.labels[static_cast<size_t>(i)]);
        sum += diff;
        sum_sq += diff * diff;
    }
    report.gap = sum / n;
    report.gap_stderr = std::sqrt(std::max(sum_sq / n - report.gap * report.gap, 0.0) / n);
    report.lemma1 = lemma1_bound(truth, fitted, mc_samples, seed);
    return report;
}

double median(std::vector<double> values) {
    if (values.empty()) throw EmptyClass("median of an empty list");
    std::sort(values.begin(), values.end());
    const size_t m = values.size() / 2;
    return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

double ConsistencyCurve::median_gap_for(int train_size) const {
    for (size_t i = 0; i < train_sizes.size(); ++i)
        if (train_sizes[i] == train_size) return median_gaps[i];
    throw BadDimension("train size not present in the study");
}

ConsistencyCurve consistency_study(const SubspaceFamilySpec& truth, const ConsistencyConfig& cfg) {
    truth.validate();
    if (cfg.train_sizes.empty()) throw BadDimension("need at least one train size");
    if (cfg.trials < 1) throw BadDimension("need at least one trial");
    ConsistencyCurve curve;
    curve.train_sizes = cfg.train_sizes;
    for (size_t s = 0; s < cfg.train_sizes.size(); ++s) {
        const int n = cfg.train_sizes[s];
        std::vector<double> gaps;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t base = derive_seed(derive_seed(cfg.seed, s), t);
            const LabeledDataset train =
                sample_subspace_family(truth, n, derive_seed(base, 1));
            const LabeledDataset test =
                sample_subspace_family(truth, cfg.test_size, derive_seed(base, 2));
            const NssModel fitted = nss_fit(train, truth.intrinsic_dim);
            ConsistencyRow row;
            row.train_size = n;
            row.trial = t;
            row.report = risk_report(truth, fitted, test, cfg.mc_samples, derive_seed(base, 3));
            row.report.train_size = n;
            gaps.push_back(row.report.gap);
            curve.rows.push_back(std::move(row));
        }
        curve.median_gaps.push_back(median(std::move(gaps)));
    }
    return curve;
}

void write_consistency_csv(std::ostream& out, const ConsistencyCurve& curve) {
    out << "n,trial,r_n,r_star,gap,gap_stderr,lemma1_bound,bound_stderr\n";
    for (const auto& row : curve.rows) {
        out << row.train_size << ',' << row.trial << ',' << fmt_g17(row.report.fitted.risk) << ','
            << fmt_g17(row.report.bayes.risk) << ',' << fmt_g17(row.report.gap) << ','
            << fmt_g17(row.report.gap_stderr) << ',' << fmt_g17(row.report.lemma1.bound) << ','
            << fmt_g17(row.report.lemma1.stderr_) << '\n';
    }
}

}  // namespace nss
