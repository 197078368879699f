#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nss/dataio.hpp"
#include "nss/datagen.hpp"
#include "nss/model_io.hpp"
#include "nss/risklab.hpp"

namespace nss {

// Where benchmark data comes from: a builtin generator name with optional
// "name:key=val,key=val" parameters, or a file on disk.
struct DataSourceSpec {
    enum class Kind { Builtin, Csv, Libsvm };

    Kind kind = Kind::Builtin;
    std::string name;  // builtin generator name
    std::string path;  // file path for csv/libsvm
    std::map<std::string, double> params;
    int label_column = -1;  // csv only
    int libsvm_dim = 0;

    bool synthetic() const { return kind == Kind::Builtin; }
};

// Builtin names: gaussian-paper, subspace-paper, theorem1.
bool is_builtin_source(const std::string& name);
DataSourceSpec parse_data_source(const std::string& text, const std::string& format_hint = "");

// Freshly generated dataset for one repeat. Builtin generators that draw
// their own family (subspace-paper, theorem1) redraw it from the seed, so
// different repeats see different geometries.
LabeledDataset generate_builtin(const DataSourceSpec& source, std::uint64_t seed);

// The orthogonal-noise family a "theorem1" source describes, with the
// study's default parameters filled in (K=3, D=20, d=2, alpha=200, M=1,
// angle pi/4).
SubspaceFamilySpec theorem1_family(const DataSourceSpec& source, std::uint64_t seed);

struct BenchConfig {
    DataSourceSpec source;
    std::vector<ClassifierKind> classifiers = {ClassifierKind::Nss};
    double train_fraction = 0.8;
    int repeats = 0;  // 0 picks the default: 200 synthetic, 10 file-backed
    int folds = 10;
    std::vector<int> cv_dims;  // empty uses default_cv_grid
    int fixed_dim = 0;         // > 0 skips cross-validation
    bool tune_once = false;    // cross-validate on the first repeat only
    ScaleMode scale = ScaleMode::None;
    double pca_variance = 0.0;  // 0 disables PCA
    int pca_max_dim = 1000;
    std::uint64_t seed = 1;
};

struct RepeatRow {
    int repeat = 0;
    ClassifierKind classifier = ClassifierKind::Nss;
    double accuracy = 0.0;
    int chosen_dim = 0;     // NSS only
    double fit_seconds = 0.0;
    std::string error;      // nonempty marks a failed repeat

    bool failed() const { return !error.empty(); }
};

struct ClassifierSummary {
    ClassifierKind classifier = ClassifierKind::Nss;
    int completed = 0;
    int failures = 0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;  // sample standard deviation (n-1)
    double mean_fit_seconds = 0.0;
};

struct BenchResult {
    std::vector<RepeatRow> rows;
    std::vector<ClassifierSummary> summaries;

    const ClassifierSummary& summary_for(ClassifierKind kind) const;
};

BenchResult run_bench(const BenchConfig& config);

// Deterministic rows (timing excluded so bytes are reproducible):
// repeat,classifier,accuracy,chosen_dim,error.
void write_bench_csv(std::ostream& out, const BenchResult& result);

// Human-readable summary with timing.
void print_bench_table(std::ostream& out, const BenchResult& result);

struct ConsistencyRunConfig {
    DataSourceSpec source;  // must be a theorem1 builtin
    ConsistencyConfig study;
};

ConsistencyCurve run_consistency(const ConsistencyRunConfig& config);

}  // namespace nss
