// nsslab: generate benchmark data, fit/apply subspace classifiers, run the
// repeated-split benchmark and the risk-consistency study.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "nss/bench.hpp"
#include "nss/errors.hpp"
#include "nss/model_io.hpp"
#include "nss/textio.hpp"

namespace {

using namespace nss;

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    for (const std::string& token : split(text, ',')) {
        const auto v = parse_integral(token);
        if (!v) throw ParseError(std::string("bad ") + what + " entry '" + token + "'");
        out.push_back(*v);
    }
    if (out.empty()) throw ParseError(std::string(what) + " list is empty");
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

struct CommonDataArgs {
    std::string data;
    std::string format;
    int label_col = -1;
    int libsvm_dim = 0;

    DataSourceSpec resolve() const {
        DataSourceSpec source = parse_data_source(data, format);
        source.label_column = label_col;
        source.libsvm_dim = libsvm_dim;
        return source;
    }
    LabeledDataset load(std::uint64_t seed) const {
        const DataSourceSpec source = resolve();
        switch (source.kind) {
            case DataSourceSpec::Kind::Builtin: return generate_builtin(source, seed);
            case DataSourceSpec::Kind::Csv: return read_csv(source.path, source.label_column);
            case DataSourceSpec::Kind::Libsvm:
                return read_libsvm_file(source.path, source.libsvm_dim);
        }
        throw ParseError("unreachable data source kind");
    }
    void attach(CLI::App* cmd) {
        cmd->add_option("--data", data,
                        "builtin generator (gaussian-paper, subspace-paper, theorem1, with "
                        "optional :key=val,... parameters) or a file path")
            ->required();
        cmd->add_option("--format", format, "file format: csv or libsvm (default: by extension)");
        cmd->add_option("--label-col", label_col, "0-based CSV label column (default: 'label' "
                                                  "header or last column)");
    }
};

int cmd_gen(const CommonDataArgs& data_args, std::uint64_t seed, const std::string& out_path) {
    const DataSourceSpec source = data_args.resolve();
    if (!source.synthetic()) throw ParseError("gen needs a builtin generator, not a file");
    const LabeledDataset data = generate_builtin(source, seed);
    write_csv_file(out_path, data);

    Metadata meta;
    meta["generator"] = source.name;
    meta["seed"] = std::to_string(seed);
    meta["n"] = std::to_string(data.n());
    meta["D"] = std::to_string(data.dim());
    meta["K"] = std::to_string(data.num_classes);
    for (const auto& [key, value] : source.params) meta["param_" + key] = fmt_g17(value);
    write_metadata_file(out_path + ".meta", meta);
    std::cout << "wrote " << data.n() << " samples (D=" << data.dim() << ", K="
              << data.num_classes << ") to " << out_path << "\n";
    return 0;
}

struct FitArgs {
    CommonDataArgs data;
    std::string classifier = "nss";
    int dim = 0;
    std::string cv_dims;
    int folds = 10;
    std::string scale = "none";
    double pca_var = 0.0;
    int pca_max = 1000;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_fit(const FitArgs& args) {
    const LabeledDataset raw = args.data.load(args.seed);

    Pipeline pipeline;
    pipeline.kind = parse_classifier_kind(args.classifier);
    pipeline.input_dim = raw.dim();
    pipeline.scaler = fit_scaler(raw.samples, parse_scale_mode(args.scale));
    Matrix x = apply_scaler(pipeline.scaler, raw.samples);
    if (args.pca_var > 0.0) {
        pipeline.pca = fit_pca(x, args.pca_var, args.pca_max);
        x = apply_pca(*pipeline.pca, x);
    }
    const LabeledDataset train = LabeledDataset::create(x, raw.labels, raw.num_classes);

    switch (pipeline.kind) {
        case ClassifierKind::Nss: {
            int d = args.dim;
            if (d <= 0) {
                std::vector<int> grid = args.cv_dims.empty() ? default_cv_grid(train.dim())
                                                             : parse_int_list(args.cv_dims, "--cv-dims");
                const CvReport report =
                    nss_cross_validate(train, std::move(grid), args.folds, derive_seed(args.seed, 7));
                d = report.chosen_dim;
                std::cout << "cross-validation chose d=" << d << "\n";
            }
            pipeline.nss = nss_fit(train, d);
            pipeline.chosen_dim = d;
            break;
        }
        case ClassifierKind::Lda: pipeline.lda = lda_fit(train); break;
        case ClassifierKind::Centroid: pipeline.centroid = centroid_fit(train); break;
    }

    save_model_file(args.out, pipeline);
    const double train_acc =
        1.0 - empirical_risk(pipeline.predict_all(raw.samples), raw.labels);
    char line[96];
    std::snprintf(line, sizeof line, "trained %s on %d samples, train accuracy %.2f%%\n",
                  args.classifier.c_str(), raw.n(), 100.0 * train_acc);
    std::cout << line << "saved model to " << args.out << "\n";
    return 0;
}

struct PredictArgs {
    CommonDataArgs data;
    std::string model;
    std::string out;
    bool residuals = false;
    std::uint64_t seed = 1;
};

int cmd_predict(const PredictArgs& args) {
    const Pipeline pipeline = load_model_file(args.model);
    const LabeledDataset data = args.data.load(args.seed);
    std::ofstream file;
    if (!args.out.empty()) file = open_out(args.out);
    std::ostream& out = args.out.empty() ? std::cout : file;

    if (args.residuals) {
        const int K = pipeline.nss ? pipeline.nss->num_classes() : 0;
        out << "predicted";
        for (int k = 1; k <= K; ++k) out << ",residual" << k;
        out << '\n';
        for (int r = 0; r < data.n(); ++r) {
            const Vector x = data.samples.row(r).transpose();
            const Vector res = pipeline.residuals(x);
            out << pipeline.predict(x);
            for (Eigen::Index k = 0; k < res.size(); ++k) out << ',' << fmt_g17(res[k]);
            out << '\n';
        }
    } else {
        out << "predicted\n";
        for (int label : pipeline.predict_all(data.samples)) out << label << '\n';
    }

    const double acc = 1.0 - empirical_risk(pipeline.predict_all(data.samples), data.labels);
    char line[64];
    std::snprintf(line, sizeof line, "accuracy %.2f%% on %d samples\n", 100.0 * acc, data.n());
    std::cerr << line;
    return 0;
}

struct BenchArgs {
    CommonDataArgs data;
    std::vector<std::string> classifiers = {"nss", "lda"};
    double train_frac = 0.8;
    int repeats = 0;
    int folds = 10;
    std::string cv_dims;
    int dim = 0;
    bool tune_once = false;
    std::string scale = "none";
    double pca_var = 0.0;
    int pca_max = 1000;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    BenchConfig config;
    config.source = args.data.resolve();
    config.classifiers.clear();
    for (const std::string& name : args.classifiers)
        config.classifiers.push_back(parse_classifier_kind(name));
    config.train_fraction = args.train_frac;
    config.repeats = args.repeats;
    config.folds = args.folds;
    if (!args.cv_dims.empty()) config.cv_dims = parse_int_list(args.cv_dims, "--cv-dims");
    config.fixed_dim = args.dim;
    config.tune_once = args.tune_once;
    config.scale = parse_scale_mode(args.scale);
    config.pca_variance = args.pca_var;
    config.pca_max_dim = args.pca_max;
    config.seed = args.seed;

    const BenchResult result = run_bench(config);
    print_bench_table(std::cout, result);
    if (!args.out.empty()) {
        auto file = open_out(args.out);
        write_bench_csv(file, result);
    }
    return 0;
}

struct ConsistencyArgs {
    CommonDataArgs data;
    std::string train_sizes = "100,300,1000,3000,10000";
    int trials = 10;
    int n_test = 20000;
    int mc_samples = 20000;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_consistency(const ConsistencyArgs& args) {
    ConsistencyRunConfig config;
    config.source = args.data.resolve();
    config.study.train_sizes = parse_int_list(args.train_sizes, "--train-sizes");
    config.study.trials = args.trials;
    config.study.test_size = args.n_test;
    config.study.mc_samples = args.mc_samples;
    config.study.seed = args.seed;

    const ConsistencyCurve curve = run_consistency(config);
    char line[160];
    std::snprintf(line, sizeof line, "%8s %12s %12s %14s\n", "n", "median_gap", "mean_r_n",
                  "mean_bound");
    std::cout << line;
    for (size_t s = 0; s < curve.train_sizes.size(); ++s) {
        double rn = 0.0, bound = 0.0;
        int count = 0;
        for (const auto& row : curve.rows)
            if (row.train_size == curve.train_sizes[s]) {
                rn += row.report.fitted.risk;
                bound += row.report.lemma1.bound;
                ++count;
            }
        std::snprintf(line, sizeof line, "%8d %12.6f %12.6f %14.6f\n", curve.train_sizes[s],
                      curve.median_gaps[s], rn / count, bound / count);
        std::cout << line;
    }
    if (!args.out.empty()) {
        auto file = open_out(args.out);
        write_consistency_csv(file, curve);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nearest-subspace classification toolkit"};
    app.require_subcommand(1);

    CommonDataArgs gen_data;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "generate a builtin dataset as CSV + metadata");
    gen_data.attach(gen);
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--out", gen_out, "output CSV path")->required();

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit", "train a classifier and save the model");
    fit_args.data.attach(fit);
    fit->add_option("--classifier", fit_args.classifier, "nss, lda or centroid");
    fit->add_option("--dim", fit_args.dim, "fixed subspace dimension (skips cross-validation)");
    fit->add_option("--cv-dims", fit_args.cv_dims, "comma-separated candidate dimensions");
    fit->add_option("--folds", fit_args.folds, "cross-validation folds");
    fit->add_option("--scale", fit_args.scale, "feature scaling: none, unit or sym");
    fit->add_option("--pca-var", fit_args.pca_var, "PCA variance target in (0,1]; 0 disables");
    fit->add_option("--pca-max", fit_args.pca_max, "PCA dimension cap");
    fit->add_option("--seed", fit_args.seed, "RNG seed");
    fit->add_option("--out", fit_args.out, "model file path")->required();

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "apply a saved model to data");
    predict_args.data.attach(predict);
    predict->add_option("--model", predict_args.model, "model file from fit")->required();
    predict->add_option("--out", predict_args.out, "write predictions here instead of stdout");
    predict->add_flag("--residuals", predict_args.residuals,
                      "also print per-class subspace residuals");
    predict->add_option("--seed", predict_args.seed, "RNG seed for builtin data");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "repeated split benchmark");
    bench_args.data.attach(bench);
    bench->add_option("--classifier", bench_args.classifiers,
                      "classifiers to run (repeatable: nss, lda, centroid)");
    bench->add_option("--train-frac", bench_args.train_frac, "train fraction per repeat");
    bench->add_option("--repeats", bench_args.repeats,
                      "number of repeats (default 200 builtin, 10 file)");
    bench->add_option("--folds", bench_args.folds, "cross-validation folds");
    bench->add_option("--cv-dims", bench_args.cv_dims, "comma-separated candidate dimensions");
    bench->add_option("--dim", bench_args.dim, "fixed subspace dimension (skips cross-validation)");
    bench->add_flag("--tune-once", bench_args.tune_once,
                    "cross-validate on the first repeat only");
    bench->add_option("--scale", bench_args.scale, "feature scaling: none, unit or sym");
    bench->add_option("--pca-var", bench_args.pca_var, "PCA variance target in (0,1]; 0 disables");
    bench->add_option("--pca-max", bench_args.pca_max, "PCA dimension cap");
    bench->add_option("--seed", bench_args.seed, "RNG seed");
    bench->add_option("--out", bench_args.out, "per-repeat CSV output path");

    ConsistencyArgs cons_args;
    CLI::App* cons = app.add_subcommand("consistency", "excess-risk consistency study");
    cons_args.data.attach(cons);
    cons->add_option("--train-sizes", cons_args.train_sizes, "comma-separated training sizes");
    cons->add_option("--trials", cons_args.trials, "trials per training size");
    cons->add_option("--n-test", cons_args.n_test, "test samples per trial");
    cons->add_option("--mc-samples", cons_args.mc_samples, "Monte Carlo samples per class");
    cons->add_option("--seed", cons_args.seed, "RNG seed");
    cons->add_option("--out", cons_args.out, "per-trial CSV output path");

    try {
        app.parse(argc, argv);
        if (*gen) return cmd_gen(gen_data, gen_seed, gen_out);
        if (*fit) return cmd_fit(fit_args);
        if (*predict) return cmd_predict(predict_args);
        if (*bench) return cmd_bench(bench_args);
        if (*cons) return cmd_consistency(cons_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const nss::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
