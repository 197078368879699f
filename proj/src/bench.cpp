#include "nss/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "nss/errors.hpp"
#include "nss/textio.hpp"

namespace nss {

namespace {

constexpr const char* kGaussianPaper = "gaussian-paper";
constexpr const char* kSubspacePaper = "subspace-paper";
constexpr const char* kTheorem1 = "theorem1";

double param_or(const DataSourceSpec& source, const std::string& key, double fallback) {
    const auto it = source.params.find(key);
    return it == source.params.end() ? fallback : it->second;
}

int int_param_or(const DataSourceSpec& source, const std::string& key, int fallback) {
    const double v = param_or(source, key, fallback);
    if (v != std::floor(v)) throw ParseError("parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::string guess_format(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "libsvm" || ext == "svm" || ext == "scale" || ext == "t") return "libsvm";
    return "csv";
}

}  // namespace

bool is_builtin_source(const std::string& name) {
    return name == kGaussianPaper || name == kSubspacePaper || name == kTheorem1;
}

DataSourceSpec parse_data_source(const std::string& text, const std::string& format_hint) {
    DataSourceSpec source;
    const auto colon = text.find(':');
    const std::string head = colon == std::string::npos ? text : text.substr(0, colon);
    if (is_builtin_source(head)) {
        source.kind = DataSourceSpec::Kind::Builtin;
        source.name = head;
        if (colon != std::string::npos) {
            for (const std::string& item : split(text.substr(colon + 1), ',')) {
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                    throw ParseError("expected key=value in data parameters, got '" + item + "'");
                const auto value = parse_double(item.substr(eq + 1));
                if (!value)
                    throw ParseError("parameter value '" + item.substr(eq + 1) +
                                     "' is not a number");
                source.params[item.substr(0, eq)] = *value;
            }
        }
        return source;
    }
    source.path = text;
    const std::string format = format_hint.empty() ? guess_format(text) : format_hint;
    if (format == "csv")
        source.kind = DataSourceSpec::Kind::Csv;
    else if (format == "libsvm")
        source.kind = DataSourceSpec::Kind::Libsvm;
    else
        throw ParseError("unknown data format '" + format + "'");
    return source;
}

SubspaceFamilySpec theorem1_family(const DataSourceSpec& source, std::uint64_t seed) {
    if (source.kind != DataSourceSpec::Kind::Builtin || source.name != kTheorem1)
        throw UnsupportedFamily("consistency studies need a theorem1 data source");
    const int K = int_param_or(source, "K", 3);
    const int D = int_param_or(source, "D", 20);
    const int d = int_param_or(source, "d", 2);
    const double alpha = param_or(source, "alpha", 200.0);
    const double M = param_or(source, "M", 1.0);
    const double min_angle = param_or(source, "min_angle", std::numbers::pi / 4.0);
    return random_subspace_spec(K, D, d, min_angle, M, NoiseKind::Orthogonal, alpha, seed);
}

LabeledDataset generate_builtin(const DataSourceSpec& source, std::uint64_t seed) {
    if (source.kind != DataSourceSpec::Kind::Builtin)
        throw UnsupportedFamily("data source is not a builtin generator");
    if (source.name == kGaussianPaper) {
        const int n = int_param_or(source, "n", 1200);
        return sample_gaussian_mixture(paper_gaussian_spec(), n, seed);
    }
    if (source.name == kSubspacePaper) {
        const int n = int_param_or(source, "n", 1200);
        const SubspaceFamilySpec family = paper_subspace_spec(derive_seed(seed, 1));
        return sample_subspace_family(family, n, derive_seed(seed, 2));
    }
    const int n = int_param_or(source, "n", 1000);
    const SubspaceFamilySpec family = theorem1_family(source, derive_seed(seed, 1));
    return sample_subspace_family(family, n, derive_seed(seed, 2));
}

const ClassifierSummary& BenchResult::summary_for(ClassifierKind kind) const {
    for (const auto& summary : summaries)
        if (summary.classifier == kind) return summary;
    throw BadDimension("classifier was not part of the benchmark");
}

namespace {

struct RepeatData {
    LabeledDataset train;
    LabeledDataset test;
};

RepeatData make_repeat(const BenchConfig& config, const LabeledDataset* file_data,
                       std::uint64_t repeat_seed) {
    if (config.source.synthetic()) {
        const LabeledDataset full = generate_builtin(config.source, repeat_seed);
        auto [train, test] =
            stratified_split(full, config.train_fraction, derive_seed(repeat_seed, 101));
        return {std::move(train), std::move(test)};
    }
    auto [train, test] = stratified_split(*file_data, config.train_fraction, repeat_seed);
    return {std::move(train), std::move(test)};
}

double accuracy_of(const std::vector<int>& predicted, const std::vector<int>& truth) {
    return 1.0 - empirical_risk(predicted, truth);
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
    if (!(config.train_fraction > 0.0 && config.train_fraction < 1.0))
        throw BadDimension("train fraction must lie strictly between 0 and 1");
    if (config.classifiers.empty()) throw BadDimension("benchmark needs at least one classifier");

    LabeledDataset file_data;
    if (!config.source.synthetic()) {
        file_data = config.source.kind == DataSourceSpec::Kind::Csv
                        ? read_csv(config.source.path, config.source.label_column)
                        : read_libsvm_file(config.source.path, config.source.libsvm_dim);
    }
    const int repeats =
        config.repeats > 0 ? config.repeats : (config.source.synthetic() ? 200 : 10);

    BenchResult result;
    int cached_dim = 0;
    for (int r = 0; r < repeats; ++r) {
        const std::uint64_t repeat_seed = derive_seed(config.seed, r + 1);
        const RepeatData data = make_repeat(config, &file_data, repeat_seed);

        ScalerParams scaler = fit_scaler(data.train.samples, config.scale);
        Matrix train_x = apply_scaler(scaler, data.train.samples);
        Matrix test_x = apply_scaler(scaler, data.test.samples);
        if (config.pca_variance > 0.0) {
            const PcaReducer pca = fit_pca(train_x, config.pca_variance, config.pca_max_dim);
            train_x = apply_pca(pca, train_x);
            test_x = apply_pca(pca, test_x);
        }
        const LabeledDataset train =
            LabeledDataset::create(train_x, data.train.labels, data.train.num_classes);

        for (ClassifierKind kind : config.classifiers) {
            RepeatRow row;
            row.repeat = r;
            row.classifier = kind;
            try {
                const auto t0 = std::chrono::steady_clock::now();
                std::vector<int> predicted;
                switch (kind) {
                    case ClassifierKind::Nss: {
                        int d = config.fixed_dim;
                        if (d <= 0 && config.tune_once && cached_dim > 0) d = cached_dim;
                        if (d <= 0) {
                            std::vector<int> grid = config.cv_dims.empty()
                                                        ? default_cv_grid(train.dim())
                                                        : config.cv_dims;
                            const CvReport report = nss_cross_validate(
                                train, std::move(grid), config.folds, derive_seed(repeat_seed, 7));
                            d = report.chosen_dim;
                            if (config.tune_once) cached_dim = d;
                        }
                        const NssModel model = nss_fit(train, d);
                        row.chosen_dim = d;
                        predicted = nss_predict_all(model, test_x);
                        break;
                    }
                    case ClassifierKind::Lda: {
                        const LdaModel model = lda_fit(train);
                        predicted = lda_predict_all(model, test_x);
                        break;
                    }
                    case ClassifierKind::Centroid: {
                        const CentroidModel model = centroid_fit(train);
                        predicted = centroid_predict_all(model, test_x);
                        break;
                    }
                }
                row.fit_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                row.accuracy = accuracy_of(predicted, data.test.labels);
            } catch (const Error& e) {
                row.error = e.what();
                row.accuracy = std::numeric_limits<double>::quiet_NaN();
            }
            result.rows.push_back(std::move(row));
        }
    }

    for (ClassifierKind kind : config.classifiers) {
        ClassifierSummary summary;
        summary.classifier = kind;
        double sum = 0.0, time_sum = 0.0;
        std::vector<double> accs;
        for (const auto& row : result.rows) {
            if (row.classifier != kind) continue;
            if (row.failed()) {
                ++summary.failures;
                continue;
            }
            ++summary.completed;
            sum += row.accuracy;
            time_sum += row.fit_seconds;
            accs.push_back(row.accuracy);
        }
        if (summary.completed > 0) {
            summary.mean_accuracy = sum / summary.completed;
            summary.mean_fit_seconds = time_sum / summary.completed;
            if (summary.completed > 1) {
                double ss = 0.0;
                for (double a : accs) ss += (a - summary.mean_accuracy) * (a - summary.mean_accuracy);
                summary.std_accuracy = std::sqrt(ss / (summary.completed - 1));
            }
        }
        result.summaries.push_back(summary);
    }
    return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
    out << "repeat,classifier,accuracy,chosen_dim,error\n";
    for (const auto& row : result.rows) {
        out << row.repeat << ',' << classifier_kind_name(row.classifier) << ',';
        if (!row.failed()) out << fmt_g17(row.accuracy);
        out << ',' << row.chosen_dim << ',' << row.error << '\n';
    }
}

void print_bench_table(std::ostream& out, const BenchResult& result) {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %10s %10s %12s %9s %9s\n", "classifier", "mean_acc%",
                  "std_acc%", "mean_fit_s", "completed", "failed");
    out << line;
    for (const auto& s : result.summaries) {
        std::snprintf(line, sizeof line, "%-10s %10.2f %10.2f %12.6f %9d %9d\n",
                      classifier_kind_name(s.classifier).c_str(), 100.0 * s.mean_accuracy,
                      100.0 * s.std_accuracy, s.mean_fit_seconds, s.completed, s.failures);
        out << line;
    }
}

ConsistencyCurve run_consistency(const ConsistencyRunConfig& config) {
    const SubspaceFamilySpec family =
        theorem1_family(config.source, derive_seed(config.study.seed, 9001));
    return consistency_study(family, config.study);
}

}  // namespace nss
