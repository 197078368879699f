#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nss/classifiers.hpp"
#include "nss/datagen.hpp"
#include "nss/dataset.hpp"

namespace nss {

// Bayes rule for a known Gaussian mixture: argmax_k log pi_k + log N(x; mu_k, Sigma_k).
struct GaussianBayesRule {
    explicit GaussianBayesRule(const GaussianMixtureSpec& spec);
    int predict(const Vector& x) const;
    std::vector<int> predict_all(const Matrix& rows) const;

private:
    std::vector<Vector> means_;
    std::vector<Matrix> chol_lower_;
    std::vector<double> log_norm_;  // log pi_k - 0.5 log((2 pi)^D det Sigma_k)
};

int bayes_predict(const GaussianMixtureSpec& spec, const Vector& x);
std::vector<int> bayes_predict_all(const GaussianMixtureSpec& spec, const Matrix& rows);

// Bayes rule for an orthogonal-noise subspace family (equal priors): the
// class of smallest squared subspace distance among classes whose on-subspace
// ball contains the projection; class 1 if no support contains x.
// Throws UnsupportedFamily for ambient-noise families.
int bayes_predict(const SubspaceFamilySpec& spec, const Vector& x);
std::vector<int> bayes_predict_all(const SubspaceFamilySpec& spec, const Matrix& rows);

double empirical_risk(const std::vector<int>& predicted, const std::vector<int>& truth);

struct RiskEstimate {
    double risk = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

RiskEstimate risk_with_stderr(const std::vector<int>& predicted, const std::vector<int>& truth);

// L1 population bound on the excess risk of a fitted subspace classifier:
//   (1/K) sum_k integral |g_k - ghat_k|,
// where ghat_k is the same family with the fitted center and basis plugged
// in. Estimated by Monte Carlo with samples drawn half from g_k and half
// from ghat_k, so the integrand 2|g-ghat|/(g+ghat) is bounded by 2.
struct Lemma1Estimate {
    double bound = 0.0;
    double stderr_ = 0.0;
    int samples_per_class = 0;
};

// The fitted model reinterpreted as an orthogonal-noise family (same alpha, M).
SubspaceFamilySpec plugin_family(const SubspaceFamilySpec& truth, const NssModel& fitted);

Lemma1Estimate lemma1_bound(const SubspaceFamilySpec& truth, const NssModel& fitted,
                            int mc_samples, std::uint64_t seed);

// One train/evaluate round: empirical risks of the fitted rule and the Bayes
// rule on a shared test set, their paired gap, and the L1 bound.
struct RiskReport {
    int train_size = 0;
    RiskEstimate fitted;
    RiskEstimate bayes;
    double gap = 0.0;
    double gap_stderr = 0.0;
    Lemma1Estimate lemma1;
};

RiskReport risk_report(const SubspaceFamilySpec& truth, const NssModel& fitted,
                       const LabeledDataset& test, int mc_samples, std::uint64_t seed);

struct ConsistencyConfig {
    std::vector<int> train_sizes;
    int trials = 10;
    int test_size = 20000;
    int mc_samples = 20000;
    std::uint64_t seed = 1;
};

struct ConsistencyRow {
    int train_size = 0;
    int trial = 0;
    RiskReport report;
};

struct ConsistencyCurve {
    std::vector<ConsistencyRow> rows;
    std::vector<int> train_sizes;
    std::vector<double> median_gaps;  // one per train size

    double median_gap_for(int train_size) const;
};

ConsistencyCurve consistency_study(const SubspaceFamilySpec& truth, const ConsistencyConfig& cfg);

// Deterministic CSV: n,trial,r_n,r_star,gap,gap_stderr,lemma1_bound,bound_stderr.
void write_consistency_csv(std::ostream& out, const ConsistencyCurve& curve);

double median(std::vector<double> values);

}  // namespace nss
