#include "nss/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "nss/rng.hpp"

namespace nss {

LabeledDataset LabeledDataset::create(Matrix samples, std::vector<int> labels, int num_classes) {
    if (samples.rows() < 1 || samples.cols() < 1)
        throw Error(ErrorClass::Numeric, "dataset: need n >= 1 and D >= 1");
    if (static_cast<size_t>(samples.rows()) != labels.size())
        throw DimensionMismatch("dataset: " + std::to_string(samples.rows()) + " rows vs " +
                                std::to_string(labels.size()) + " labels");
    require_finite(samples, "dataset samples");
    int max_label = 0;
    for (int y : labels) {
        if (y < 1) throw Error(ErrorClass::Numeric, "dataset: label " + std::to_string(y) + " < 1");
        max_label = std::max(max_label, y);
    }
    if (num_classes == 0) num_classes = max_label;
    if (max_label > num_classes)
        throw Error(ErrorClass::Numeric, "dataset: label " + std::to_string(max_label) +
                                             " exceeds K=" + std::to_string(num_classes));
    return LabeledDataset{std::move(samples), std::move(labels), num_classes};
}

std::vector<int> LabeledDataset::class_counts() const {
    std::vector<int> counts(static_cast<size_t>(num_classes), 0);
    for (int y : labels) ++counts[static_cast<size_t>(y - 1)];
    return counts;
}

std::vector<std::vector<int>> LabeledDataset::class_indices() const {
    std::vector<std::vector<int>> idx(static_cast<size_t>(num_classes));
    for (int i = 0; i < n(); ++i) idx[static_cast<size_t>(labels[static_cast<size_t>(i)] - 1)].push_back(i);
    return idx;
}

Matrix LabeledDataset::class_rows(int k) const {
    std::vector<int> idx;
    for (int i = 0; i < n(); ++i)
        if (labels[static_cast<size_t>(i)] == k) idx.push_back(i);
    Matrix rows(static_cast<Eigen::Index>(idx.size()), samples.cols());
    for (size_t i = 0; i < idx.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = samples.row(idx[i]);
    return rows;
}

void LabeledDataset::require_all_classes_nonempty() const {
    const auto counts = class_counts();
    for (int k = 1; k <= num_classes; ++k)
        if (counts[static_cast<size_t>(k - 1)] == 0)
            throw EmptyClass("class " + std::to_string(k) + " has no samples");
}

LabeledDataset subset(const LabeledDataset& data, const std::vector<int>& rows) {
    Matrix samples(static_cast<Eigen::Index>(rows.size()), data.samples.cols());
    std::vector<int> labels(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        samples.row(static_cast<Eigen::Index>(i)) = data.samples.row(rows[i]);
        labels[i] = data.labels[static_cast<size_t>(rows[i])];
    }
    return LabeledDataset{std::move(samples), std::move(labels), data.num_classes};
}

std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw Error(ErrorClass::Numeric, "train fraction must be in (0,1)");
    Rng rng(seed);
    std::vector<int> train_rows, test_rows;
    for (auto& idx : data.class_indices()) {
        if (idx.empty()) continue;
        rng.shuffle(idx);
        auto n_k = static_cast<long>(idx.size());
        long n_train = std::lround(train_fraction * static_cast<double>(n_k));
        n_train = std::clamp(n_train, 1L, n_k);
        train_rows.insert(train_rows.end(), idx.begin(), idx.begin() + n_train);
        test_rows.insert(test_rows.end(), idx.begin() + n_train, idx.end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    std::sort(test_rows.begin(), test_rows.end());
    return {subset(data, train_rows), subset(data, test_rows)};
}

std::vector<int> stratified_fold_assignment(const LabeledDataset& data, int folds,
                                            std::uint64_t seed) {
    if (folds < 2) throw InfeasibleFolds("need folds >= 2");
    if (folds > data.n())
        throw InfeasibleFolds("folds=" + std::to_string(folds) + " exceeds n=" +
                              std::to_string(data.n()));
    const auto counts = data.class_counts();
    for (int k = 1; k <= data.num_classes; ++k)
        if (counts[static_cast<size_t>(k - 1)] < 2)
            throw InfeasibleFolds("class " + std::to_string(k) +
                                  " has fewer than 2 samples; stratification impossible");

    // Round-robin within each shuffled class, rotating the starting fold so
    // small classes do not pile into fold 0.
    Rng rng(seed);
    std::vector<int> fold(static_cast<size_t>(data.n()), 0);
    int offset = 0;
    for (auto& idx : data.class_indices()) {
        rng.shuffle(idx);
        for (size_t i = 0; i < idx.size(); ++i)
            fold[static_cast<size_t>(idx[i])] = static_cast<int>((i + static_cast<size_t>(offset)) % static_cast<size_t>(folds));
        offset = (offset + static_cast<int>(idx.size())) % folds;
    }
    return fold;
}

}  // namespace nss
