#include "nss/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "nss/errors.hpp"
#include "nss/textio.hpp"

namespace nss {

ClassifierKind parse_classifier_kind(const std::string& name) {
    if (name == "nss") return ClassifierKind::Nss;
    if (name == "lda") return ClassifierKind::Lda;
    if (name == "centroid") return ClassifierKind::Centroid;
    throw ParseError("unknown classifier '" + name + "'");
}

std::string classifier_kind_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::Nss: return "nss";
        case ClassifierKind::Lda: return "lda";
        case ClassifierKind::Centroid: return "centroid";
    }
    return "nss";
}

Matrix Pipeline::transform(const Matrix& rows) const {
    Matrix out = apply_scaler(scaler, rows);
    if (pca) out = apply_pca(*pca, out);
    return out;
}

Vector Pipeline::transform(const Vector& x) const {
    Vector out = apply_scaler(scaler, x);
    if (pca) out = apply_pca(*pca, out);
    return out;
}

int Pipeline::predict(const Vector& x) const {
    const Vector z = transform(x);
    switch (kind) {
        case ClassifierKind::Nss: return nss_predict(*nss, z);
        case ClassifierKind::Lda: return lda_predict(*lda, z);
        case ClassifierKind::Centroid: return centroid_predict(*centroid, z);
    }
    throw WrongMode("pipeline has no classifier");
}

std::vector<int> Pipeline::predict_all(const Matrix& rows) const {
    const Matrix z = transform(rows);
    switch (kind) {
        case ClassifierKind::Nss: return nss_predict_all(*nss, z);
        case ClassifierKind::Lda: return lda_predict_all(*lda, z);
        case ClassifierKind::Centroid: return centroid_predict_all(*centroid, z);
    }
    throw WrongMode("pipeline has no classifier");
}

Vector Pipeline::residuals(const Vector& x) const {
    if (kind != ClassifierKind::Nss || !nss)
        throw WrongMode("residuals are only defined for subspace classifiers");
    return nss_residuals(*nss, transform(x));
}

namespace {

constexpr const char* kMagic = "nsslab-model";
constexpr const char* kVersion = "v1";

void write_vector_line(std::ostream& out, const std::string& tag, const Vector& v) {
    out << tag;
    for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << fmt_g17(v[i]);
    out << '\n';
}

void write_matrix_line(std::ostream& out, const std::string& tag, const Matrix& m) {
    out << tag << ' ' << m.rows() << ' ' << m.cols();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) out << ' ' << fmt_g17(m(r, c));
    out << '\n';
}

struct TokenReader {
    std::istream& in;

    std::string word(const char* what) {
        std::string token;
        if (!(in >> token)) throw ParseError(std::string("model file ended before ") + what);
        return token;
    }
    void expect(const std::string& tag) {
        const std::string got = word(tag.c_str());
        if (got != tag) throw ParseError("expected '" + tag + "' in model file, got '" + got + "'");
    }
    int integer(const char* what) {
        const auto v = parse_integral(word(what));
        if (!v) throw ParseError(std::string("expected an integer for ") + what);
        return *v;
    }
    double number(const char* what) {
        const auto v = parse_double(word(what));
        if (!v) throw ParseError(std::string("expected a number for ") + what);
        return *v;
    }
    Vector vector_line(const std::string& tag, int size) {
        expect(tag);
        Vector v(size);
        for (int i = 0; i < size; ++i) v[i] = number(tag.c_str());
        return v;
    }
    Matrix matrix_line(const std::string& tag) {
        expect(tag);
        const int rows = integer("rows");
        const int cols = integer("cols");
        if (rows < 1 || cols < 1) throw ParseError("matrix in model file has empty shape");
        Matrix m(rows, cols);
        for (int c = 0; c < cols; ++c)
            for (int r = 0; r < rows; ++r) m(r, c) = number(tag.c_str());
        return m;
    }
};

}  // namespace

void save_model(std::ostream& out, const Pipeline& pipeline) {
    out << kMagic << ' ' << kVersion << '\n';
    out << "classifier " << classifier_kind_name(pipeline.kind) << '\n';
    out << "input-dim " << pipeline.input_dim << '\n';
    out << "scale " << scale_mode_name(pipeline.scaler.mode) << '\n';
    if (pipeline.scaler.mode != ScaleMode::None) {
        write_vector_line(out, "scale-offset", pipeline.scaler.offset);
        write_vector_line(out, "scale-factor", pipeline.scaler.scale);
    }
    out << "pca " << (pipeline.pca ? pipeline.pca->output_dim() : 0) << '\n';
    if (pipeline.pca) {
        write_vector_line(out, "pca-center", pipeline.pca->center);
        write_matrix_line(out, "pca-components", pipeline.pca->components);
        out << "pca-variance-ratio " << fmt_g17(pipeline.pca->captured_variance_ratio) << '\n';
    }
    switch (pipeline.kind) {
        case ClassifierKind::Nss: {
            const NssModel& m = *pipeline.nss;
            out << "classes " << m.num_classes() << '\n';
            for (const auto& sub : m.subspaces) {
                write_vector_line(out, "subspace-mean", sub.mean);
                write_matrix_line(out, "subspace-basis", sub.basis);
            }
            break;
        }
        case ClassifierKind::Lda: {
            const LdaModel& m = *pipeline.lda;
            out << "classes " << m.num_classes() << '\n';
            for (const auto& mean : m.class_means) write_vector_line(out, "lda-mean", mean);
            write_matrix_line(out, "lda-cov-inv", m.pooled_covariance_inverse);
            out << "lda-log-priors";
            for (double p : m.log_priors) out << ' ' << fmt_g17(p);
            out << '\n';
            break;
        }
        case ClassifierKind::Centroid: {
            const CentroidModel& m = *pipeline.centroid;
            out << "classes " << m.num_classes() << '\n';
            for (const auto& mean : m.means) write_vector_line(out, "centroid-mean", mean);
            break;
        }
    }
}

void save_model_file(const std::string& path, const Pipeline& pipeline) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    save_model(out, pipeline);
}

Pipeline load_model(std::istream& in) {
    TokenReader reader{in};
    if (reader.word("magic") != kMagic) throw ParseError("not a model file");
    const std::string version = reader.word("version");
    if (version != kVersion) throw ParseError("unsupported model version '" + version + "'");

    Pipeline pipeline;
    reader.expect("classifier");
    pipeline.kind = parse_classifier_kind(reader.word("classifier kind"));
    reader.expect("input-dim");
    pipeline.input_dim = reader.integer("input-dim");
    if (pipeline.input_dim < 1) throw ParseError("model input dimension must be positive");

    reader.expect("scale");
    pipeline.scaler.mode = parse_scale_mode(reader.word("scale mode"));
    if (pipeline.scaler.mode != ScaleMode::None) {
        pipeline.scaler.offset = reader.vector_line("scale-offset", pipeline.input_dim);
        pipeline.scaler.scale = reader.vector_line("scale-factor", pipeline.input_dim);
        for (int c = 0; c < pipeline.input_dim; ++c)
            if (pipeline.scaler.scale[c] == 0.0) pipeline.scaler.degenerate.push_back(c);
    } else {
        pipeline.scaler.offset = Vector::Zero(pipeline.input_dim);
        pipeline.scaler.scale = Vector::Ones(pipeline.input_dim);
    }

    reader.expect("pca");
    const int pca_dim = reader.integer("pca dimension");
    if (pca_dim < 0) throw ParseError("PCA dimension must be nonnegative");
    if (pca_dim > 0) {
        PcaReducer pca;
        pca.center = reader.vector_line("pca-center", pipeline.input_dim);
        pca.components = reader.matrix_line("pca-components");
        if (pca.components.rows() != pipeline.input_dim || pca.components.cols() != pca_dim)
            throw ParseError("PCA components have inconsistent shape");
        reader.expect("pca-variance-ratio");
        pca.captured_variance_ratio = reader.number("pca-variance-ratio");
        pipeline.pca = std::move(pca);
    }
    const int feature_dim = pca_dim > 0 ? pca_dim : pipeline.input_dim;

    reader.expect("classes");
    const int K = reader.integer("class count");
    if (K < 1) throw ParseError("model must have at least one class");

    switch (pipeline.kind) {
        case ClassifierKind::Nss: {
            NssModel m;
            for (int k = 0; k < K; ++k) {
                SubspaceModel sub;
                sub.mean = reader.vector_line("subspace-mean", feature_dim);
                sub.basis = reader.matrix_line("subspace-basis");
                if (sub.basis.rows() != feature_dim)
                    throw ParseError("subspace basis has inconsistent dimension");
                validate_subspace(sub);
                m.subspaces.push_back(std::move(sub));
            }
            pipeline.chosen_dim = m.dim();
            pipeline.nss = std::move(m);
            break;
        }
        case ClassifierKind::Lda: {
            LdaModel m;
            for (int k = 0; k < K; ++k)
                m.class_means.push_back(reader.vector_line("lda-mean", feature_dim));
            m.pooled_covariance_inverse = reader.matrix_line("lda-cov-inv");
            if (m.pooled_covariance_inverse.rows() != feature_dim ||
                m.pooled_covariance_inverse.cols() != feature_dim)
                throw ParseError("LDA covariance inverse has inconsistent shape");
            reader.expect("lda-log-priors");
            for (int k = 0; k < K; ++k) m.log_priors.push_back(reader.number("lda-log-priors"));
            pipeline.lda = std::move(m);
            break;
        }
        case ClassifierKind::Centroid: {
            CentroidModel m;
            for (int k = 0; k < K; ++k)
                m.means.push_back(reader.vector_line("centroid-mean", feature_dim));
            pipeline.centroid = std::move(m);
            break;
        }
    }
    return pipeline;
}

Pipeline load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return load_model(in);
}

}  // namespace nss
