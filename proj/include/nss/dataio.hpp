#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nss/dataset.hpp"

namespace nss {

// Comma-separated numeric table. A header row is detected by its first cell
// failing to parse as a number; column names default to col1..colD.
struct CsvTable {
    std::vector<std::string> column_names;
    bool had_header = false;
    Matrix values;
};

CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table_file(const std::string& path);

// Labeled view of a CSV table. label_column: 0-based index, or -1 to pick a
// column named "label" if present, else the last column. Labels must be
// integers >= 1.
LabeledDataset dataset_from_table(const CsvTable& table, int label_column = -1);
LabeledDataset read_csv(const std::string& path, int label_column = -1);

void write_csv(std::ostream& out, const LabeledDataset& data,
               const std::vector<std::string>& feature_names = {});
void write_csv_file(const std::string& path, const LabeledDataset& data,
                    const std::vector<std::string>& feature_names = {});

// LIBSVM sparse lines: "<label> idx:val idx:val ...", indices 1-based and
// strictly ascending within a line. Unlisted coordinates are zero. dim=0
// infers the dimension from the largest index seen.
LabeledDataset read_libsvm(std::istream& in, int dim = 0);
LabeledDataset read_libsvm_file(const std::string& path, int dim = 0);
void write_libsvm(std::ostream& out, const LabeledDataset& data);

enum class ScaleMode { None, Unit, Sym };

ScaleMode parse_scale_mode(const std::string& name);
std::string scale_mode_name(ScaleMode mode);

// Per-feature affine rescaling fit on training data: Unit maps [lo,hi] to
// [0,1], Sym divides by max |value|. Constant (Unit) or all-zero (Sym)
// features map to 0 and are flagged.
struct ScalerParams {
    ScaleMode mode = ScaleMode::None;
    Vector offset;                /// subtracted first
    Vector scale;                 /// then multiplied
    std::vector<int> degenerate;  /// 0-based features forced to 0
};

ScalerParams fit_scaler(const Matrix& rows, ScaleMode mode);
Matrix apply_scaler(const ScalerParams& params, const Matrix& rows);
Vector apply_scaler(const ScalerParams& params, const Vector& x);

// PCA reduction to the smallest dimension whose eigenvalue mass reaches
// variance_target (capped at max_dim). Components are descending-eigenvalue
// principal directions of the training scatter.
struct PcaReducer {
    Vector center;
    Matrix components;  /// D x m, orthonormal columns
    double captured_variance_ratio = 1.0;

    int input_dim() const { return static_cast<int>(components.rows()); }
    int output_dim() const { return static_cast<int>(components.cols()); }
};

PcaReducer fit_pca(const Matrix& rows, double variance_target = 0.95, int max_dim = 1000);
Matrix apply_pca(const PcaReducer& pca, const Matrix& rows);
Vector apply_pca(const PcaReducer& pca, const Vector& x);

// key=value sidecar describing how a file was generated; '#' lines are
// comments. Values stay strings so callers decide types.
using Metadata = std::map<std::string, std::string>;

void write_metadata(std::ostream& out, const Metadata& meta);
void write_metadata_file(const std::string& path, const Metadata& meta);
Metadata read_metadata(std::istream& in);
Metadata read_metadata_file(const std::string& path);

}  // namespace nss
