#pragma once

#include <cstdint>
#include <vector>

#include "nss/dataset.hpp"
#include "nss/subspace.hpp"

namespace nss {

// One affine subspace per class, shared intrinsic dimension. Prediction is
// the class of minimal residual, ties toward the smaller index.
struct NssModel {
    std::vector<SubspaceModel> subspaces;  // K entries, same D and d

    int num_classes() const { return static_cast<int>(subspaces.size()); }
    int dim() const { return subspaces.empty() ? 0 : subspaces.front().dim(); }
    int ambient_dim() const { return subspaces.empty() ? 0 : subspaces.front().ambient_dim(); }
    std::vector<int> degenerate_classes() const;
};

NssModel nss_fit(const LabeledDataset& data, int d);
int nss_predict(const NssModel& m, const Vector& x);
std::vector<int> nss_predict_all(const NssModel& m, const Matrix& rows);
// The K residuals for one point, in class order.
Vector nss_residuals(const NssModel& m, const Vector& x);

struct CvReport {
    std::vector<int> candidate_dims;                   // ascending, deduplicated
    std::vector<std::vector<double>> fold_accuracies;  // [candidate][fold]
    int chosen_dim = 0;

    double mean_accuracy(int candidate_index) const;
};

// Default candidate grid {1,2,3,5,8,12,20,floor(D/2)} clipped to [1, D-1].
std::vector<int> default_cv_grid(int D);

// Stratified seeded k-fold selection of the shared intrinsic dimension.
// chosen_dim maximizes mean fold accuracy, ties toward the smaller d.
CvReport nss_cross_validate(const LabeledDataset& data, std::vector<int> candidate_dims, int folds,
                            std::uint64_t seed);

// Gaussian discriminant with pooled covariance and empirical priors.
struct LdaModel {
    std::vector<Vector> class_means;
    Matrix pooled_covariance_inverse;
    std::vector<double> log_priors;

    int num_classes() const { return static_cast<int>(class_means.size()); }
    int ambient_dim() const { return static_cast<int>(pooled_covariance_inverse.rows()); }
};

// Throws SingularCovariance when the pooled covariance is not positive
// definite with condition number below 1e12; reduce dimension first.
LdaModel lda_fit(const LabeledDataset& data);
int lda_predict(const LdaModel& m, const Vector& x);
std::vector<int> lda_predict_all(const LdaModel& m, const Matrix& rows);

struct CentroidModel {
    std::vector<Vector> means;

    int num_classes() const { return static_cast<int>(means.size()); }
    int ambient_dim() const { return means.empty() ? 0 : static_cast<int>(means.front().size()); }
};

CentroidModel centroid_fit(const LabeledDataset& data);
int centroid_predict(const CentroidModel& m, const Vector& x);
std::vector<int> centroid_predict_all(const CentroidModel& m, const Matrix& rows);

}  // namespace nss
