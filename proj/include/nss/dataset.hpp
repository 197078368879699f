#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nss/types.hpp"

namespace nss {

// Dense sample matrix (one row per sample) with integer class labels in
// {1..K}. The universal currency between modules.
struct LabeledDataset {
    Matrix samples;           // n x D
    std::vector<int> labels;  // n entries in {1..K}
    int num_classes = 0;      // K

    int n() const { return static_cast<int>(samples.rows()); }
    int dim() const { return static_cast<int>(samples.cols()); }

    // Validates shape, finiteness and label range. K defaults to the max
    // label when 0 is passed.
    static LabeledDataset create(Matrix samples, std::vector<int> labels, int num_classes = 0);

    std::vector<int> class_counts() const;
    std::vector<std::vector<int>> class_indices() const;

    // Rows of one class, in dataset order.
    Matrix class_rows(int k) const;

    // Throws EmptyClass naming the first class with zero samples.
    void require_all_classes_nonempty() const;
};

LabeledDataset subset(const LabeledDataset& data, const std::vector<int>& rows);

// Seeded stratified split: per class, a shuffled round(train_fraction * n_k)
// prefix goes to train (at least one sample per class).
std::pair<LabeledDataset, LabeledDataset> stratified_split(const LabeledDataset& data,
                                                           double train_fraction,
                                                           std::uint64_t seed);

// Seeded stratified fold labels in [0, folds). Every fold's complement keeps
// all classes non-empty; throws InfeasibleFolds otherwise.
std::vector<int> stratified_fold_assignment(const LabeledDataset& data, int folds,
                                            std::uint64_t seed);

}  // namespace nss
