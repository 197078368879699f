#include "nss/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nss/errors.hpp"
#include "nss/linalg.hpp"
#include "nss/textio.hpp"

namespace nss {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

std::string trimmed(const std::string& s) {
    size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

}  // namespace

CsvTable read_csv_table(std::istream& in) {
    CsvTable table;
    std::vector<std::vector<double>> rows;
    std::string line;
    long line_no = 0;
    long width = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        const std::vector<std::string> cells = split(line, ',');
        if (line_no == 1 && !parse_double(trimmed(cells[0]))) {
            for (const auto& cell : cells) table.column_names.push_back(trimmed(cell));
            table.had_header = true;
            width = static_cast<long>(cells.size());
            continue;
        }
        if (width < 0) width = static_cast<long>(cells.size());
        if (static_cast<long>(cells.size()) != width)
            throw RaggedRows("row has " + std::to_string(cells.size()) + " cells, expected " +
                                 std::to_string(width),
                             line_no);
        std::vector<double> row(cells.size());
        for (size_t c = 0; c < cells.size(); ++c) {
            const auto value = parse_double(trimmed(cells[c]));
            if (!value)
                throw ParseError("cell '" + trimmed(cells[c]) + "' is not a number", line_no,
                                 static_cast<long>(c + 1));
            row[c] = *value;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("input has no data rows");
    const long cols = width;
    if (table.column_names.empty())
        for (long c = 0; c < cols; ++c) table.column_names.push_back("col" + std::to_string(c + 1));
    table.values.resize(static_cast<Eigen::Index>(rows.size()), cols);
    for (size_t r = 0; r < rows.size(); ++r)
        for (long c = 0; c < cols; ++c) table.values(static_cast<Eigen::Index>(r), c) = rows[r][c];
    return table;
}

CsvTable read_csv_table_file(const std::string& path) {
    auto in = open_input(path);
    return read_csv_table(in);
}

LabeledDataset dataset_from_table(const CsvTable& table, int label_column) {
    const int cols = static_cast<int>(table.values.cols());
    if (cols < 2) throw ParseError("need at least one feature column plus labels");
    int label = label_column;
    if (label < 0) {
        label = cols - 1;
        for (int c = 0; c < cols; ++c)
            if (table.column_names[c] == "label") {
                label = c;
                break;
            }
    }
    if (label >= cols) throw ParseError("label column is out of range");

    const Eigen::Index n = table.values.rows();
    Matrix samples(n, cols - 1);
    std::vector<int> labels(static_cast<size_t>(n));
    for (int c = 0, f = 0; c < cols; ++c) {
        if (c == label) continue;
        samples.col(f++) = table.values.col(c);
    }
    const long header_lines = table.had_header ? 1 : 0;
    for (Eigen::Index r = 0; r < n; ++r) {
        const double raw = table.values(r, label);
        if (raw != std::floor(raw) || raw < 1.0 || raw > 1e9)
            throw ParseError("label '" + fmt_g17(raw) + "' is not a positive integer",
                             r + 1 + header_lines, label + 1);
        labels[static_cast<size_t>(r)] = static_cast<int>(raw);
    }
    return LabeledDataset::create(std::move(samples), std::move(labels));
}

LabeledDataset read_csv(const std::string& path, int label_column) {
    return dataset_from_table(read_csv_table_file(path), label_column);
}

void write_csv(std::ostream& out, const LabeledDataset& data,
               const std::vector<std::string>& feature_names) {
    const int D = data.dim();
    for (int c = 0; c < D; ++c) {
        if (c < static_cast<int>(feature_names.size()))
            out << feature_names[c];
        else
            out << "x" << (c + 1);
        out << ',';
    }
    out << "label\n";
    for (int r = 0; r < data.n(); ++r) {
        for (int c = 0; c < D; ++c) out << fmt_g17(data.samples(r, c)) << ',';
        out << data.labels[static_cast<size_t>(r)] << '\n';
    }
}

void write_csv_file(const std::string& path, const LabeledDataset& data,
                    const std::vector<std::string>& feature_names) {
    auto out = open_output(path);
    write_csv(out, data, feature_names);
}

LabeledDataset read_libsvm(std::istream& in, int dim) {
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<int> labels;
    std::string line;
    long line_no = 0;
    int max_index = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (const size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream tokens(line);
        std::string token;
        if (!(tokens >> token)) continue;
        const auto label = parse_integral(token);
        if (!label || *label < 1)
            throw ParseError("label '" + token + "' is not a positive integer", line_no, 1);
        labels.push_back(*label);
        std::vector<std::pair<int, double>> row;
        long col = 1;
        while (tokens >> token) {
            ++col;
            const size_t colon = token.find(':');
            if (colon == std::string::npos)
                throw ParseError("expected index:value, got '" + token + "'", line_no, col);
            const auto index = parse_integral(token.substr(0, colon));
            const auto value = parse_double(token.substr(colon + 1));
            if (!index || *index < 1)
                throw ParseError("feature index '" + token.substr(0, colon) + "' is not positive",
                                 line_no, col);
            if (!value)
                throw ParseError("feature value '" + token.substr(colon + 1) + "' is not a number",
                                 line_no, col);
            if (!row.empty() && *index <= row.back().first)
                throw NonAscendingIndex("feature indices must be strictly ascending", line_no, col);
            row.emplace_back(*index, *value);
            max_index = std::max(max_index, *index);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("input has no rows");
    if (dim > 0 && max_index > dim)
        throw ParseError("feature index " + std::to_string(max_index) +
                         " exceeds the declared dimension " + std::to_string(dim));
    const int D = dim > 0 ? dim : max_index;
    if (D < 1) throw ParseError("no features present and no dimension declared");
    Matrix samples = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), D);
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& [index, value] : rows[r])
            samples(static_cast<Eigen::Index>(r), index - 1) = value;
    return LabeledDataset::create(std::move(samples), std::move(labels));
}

LabeledDataset read_libsvm_file(const std::string& path, int dim) {
    auto in = open_input(path);
    return read_libsvm(in, dim);
}

void write_libsvm(std::ostream& out, const LabeledDataset& data) {
    for (int r = 0; r < data.n(); ++r) {
        out << data.labels[static_cast<size_t>(r)];
        for (int c = 0; c < data.dim(); ++c)
            if (data.samples(r, c) != 0.0)
                out << ' ' << (c + 1) << ':' << fmt_g17(data.samples(r, c));
        out << '\n';
    }
}

ScaleMode parse_scale_mode(const std::string& name) {
    if (name == "none") return ScaleMode::None;
    if (name == "unit") return ScaleMode::Unit;
    if (name == "sym") return ScaleMode::Sym;
    throw ParseError("unknown scale mode '" + name + "'");
}

std::string scale_mode_name(ScaleMode mode) {
    switch (mode) {
        case ScaleMode::None: return "none";
        case ScaleMode::Unit: return "unit";
        case ScaleMode::Sym: return "sym";
    }
    return "none";
}

ScalerParams fit_scaler(const Matrix& rows, ScaleMode mode) {
    if (rows.rows() < 1) throw EmptyClass("cannot fit a scaler on an empty matrix");
    const int D = static_cast<int>(rows.cols());
    ScalerParams params;
    params.mode = mode;
    params.offset = Vector::Zero(D);
    params.scale = Vector::Ones(D);
    if (mode == ScaleMode::None) return params;
    for (int c = 0; c < D; ++c) {
        if (mode == ScaleMode::Unit) {
            const double lo = rows.col(c).minCoeff();
            const double hi = rows.col(c).maxCoeff();
            if (hi > lo) {
                params.offset[c] = lo;
                params.scale[c] = 1.0 / (hi - lo);
            } else {
                params.offset[c] = lo;
                params.scale[c] = 0.0;
                params.degenerate.push_back(c);
            }
        } else {
            const double amax = rows.col(c).cwiseAbs().maxCoeff();
            if (amax > 0.0) {
                params.scale[c] = 1.0 / amax;
            } else {
                params.scale[c] = 0.0;
                params.degenerate.push_back(c);
            }
        }
    }
    return params;
}

Matrix apply_scaler(const ScalerParams& params, const Matrix& rows) {
    if (params.mode == ScaleMode::None) return rows;
    if (rows.cols() != params.scale.size())
        throw DimensionMismatch("scaler was fit on a different dimension");
    return (rows.rowwise() - params.offset.transpose()) * params.scale.asDiagonal();
}

Vector apply_scaler(const ScalerParams& params, const Vector& x) {
    if (params.mode == ScaleMode::None) return x;
    if (x.size() != params.scale.size())
        throw DimensionMismatch("scaler was fit on a different dimension");
    return (x - params.offset).cwiseProduct(params.scale);
}

PcaReducer fit_pca(const Matrix& rows, double variance_target, int max_dim) {
    if (rows.rows() < 2) throw EmptyClass("PCA needs at least two rows");
    if (!(variance_target > 0.0 && variance_target <= 1.0))
        throw BadDimension("variance target must be in (0, 1]");
    if (max_dim < 1) throw BadDimension("max_dim must be positive");
    const int D = static_cast<int>(rows.cols());
    PcaReducer pca;
    pca.center = mean_vector(rows);
    const Matrix scatter = centered_scatter(rows, pca.center);
    const EigenPairs pairs = top_eigenpairs(scatter, D);
    const double total = std::max(pairs.values.sum(), 0.0);
    int m = 1;
    if (total > 0.0) {
        double mass = 0.0;
        for (m = 0; m < D && mass < variance_target * total - 1e-15 * total; ++m)
            mass += std::max(pairs.values[m], 0.0);
        m = std::max(m, 1);
    }
    m = std::min(m, std::min(max_dim, D));
    pca.components = pairs.vectors.leftCols(m);
    double kept = 0.0;
    for (int i = 0; i < m; ++i) kept += std::max(pairs.values[i], 0.0);
    pca.captured_variance_ratio = total > 0.0 ? kept / total : 1.0;
    return pca;
}

Matrix apply_pca(const PcaReducer& pca, const Matrix& rows) {
    if (rows.cols() != pca.components.rows())
        throw DimensionMismatch("PCA was fit on a different dimension");
    return (rows.rowwise() - pca.center.transpose()) * pca.components;
}

Vector apply_pca(const PcaReducer& pca, const Vector& x) {
    if (x.size() != pca.components.rows())
        throw DimensionMismatch("PCA was fit on a different dimension");
    return pca.components.transpose() * (x - pca.center);
}

void write_metadata(std::ostream& out, const Metadata& meta) {
    for (const auto& [key, value] : meta) out << key << '=' << value << '\n';
}

void write_metadata_file(const std::string& path, const Metadata& meta) {
    auto out = open_output(path);
    write_metadata(out, meta);
}

Metadata read_metadata(std::istream& in) {
    Metadata meta;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string body = trimmed(line);
        if (body.empty() || body[0] == '#') continue;
        const size_t eq = body.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        meta[trimmed(body.substr(0, eq))] = trimmed(body.substr(eq + 1));
    }
    return meta;
}

Metadata read_metadata_file(const std::string& path) {
    auto in = open_input(path);
    return read_metadata(in);
}

}  // namespace nss
