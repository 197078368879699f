#include "nss/datagen.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nss/errors.hpp"
#include "nss/linalg.hpp"

namespace nss {

namespace {

// floor(n * p_k) per class, remaining units to the largest fractional parts
// (ties to the smaller class index).
std::vector<int> allocate_counts(int n, const std::vector<double>& priors) {
    const int K = static_cast<int>(priors.size());
    std::vector<int> counts(K);
    std::vector<std::pair<double, int>> fractions(K);
    int assigned = 0;
    for (int k = 0; k < K; ++k) {
        const double exact = n * priors[k];
        counts[k] = static_cast<int>(std::floor(exact));
        fractions[k] = {exact - counts[k], k};
        assigned += counts[k];
    }
    std::stable_sort(fractions.begin(), fractions.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int i = 0; i < n - assigned; ++i) ++counts[fractions[i % K].second];
    return counts;
}

Vector gaussian_vector(Rng& rng, int dim) {
    Vector z(dim);
    for (int i = 0; i < dim; ++i) z[i] = rng.normal();
    return z;
}

}  // namespace

void GaussianMixtureSpec::validate() const {
    const int K = num_classes();
    if (K < 1) throw EmptyClass("mixture needs at least one class");
    if (covariances.size() != means.size() || priors.size() != means.size())
        throw DimensionMismatch("mixture components have inconsistent lengths");
    const int D = dim();
    double prior_sum = 0.0;
    for (int k = 0; k < K; ++k) {
        if (means[k].size() != D) throw DimensionMismatch("mixture mean dimensions differ");
        if (covariances[k].rows() != D || covariances[k].cols() != D)
            throw DimensionMismatch("mixture covariance dimensions differ");
        if ((covariances[k] - covariances[k].transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw NotSymmetric("mixture covariance is not symmetric");
        Eigen::LLT<Matrix> llt(covariances[k]);
        if (llt.info() != Eigen::Success)
            throw SingularCovariance("mixture covariance is not positive definite");
        if (priors[k] < 0.0) throw NonFinite("mixture prior is negative");
        prior_sum += priors[k];
    }
    if (std::abs(prior_sum - 1.0) > 1e-12) throw NonFinite("mixture priors do not sum to 1");
}

GaussianMixtureSpec paper_gaussian_spec() {
    GaussianMixtureSpec spec;
    spec.means = {Vector{{1.0, 2.0, 3.0}}, Vector{{-1.0, -2.0, -3.0}}, Vector{{-1.0, 2.0, -3.0}}};
    Matrix s1(3, 3);
    s1 << 3.0, 0.2, 0.1,
          0.2, 2.0, 0.2,
          0.1, 0.2, 2.0;
    Matrix s2 = Vector{{2.0, 1.0, 1.0}}.asDiagonal();
    Matrix s3 = Vector{{2.0, 2.0, 3.0}}.asDiagonal();
    spec.covariances = {s1, s2, s3};
    spec.priors = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return spec;
}

LabeledDataset sample_gaussian_mixture(const GaussianMixtureSpec& spec, int n, std::uint64_t seed) {
    spec.validate();
    if (n < 1) throw BadDimension("sample count must be positive");
    const int K = spec.num_classes();
    const int D = spec.dim();
    const std::vector<int> counts = allocate_counts(n, spec.priors);

    Matrix samples(n, D);
    std::vector<int> labels(n);
    Rng root(seed);
    int row = 0;
    for (int k = 0; k < K; ++k) {
        Eigen::LLT<Matrix> llt(spec.covariances[k]);
        const Matrix chol = llt.matrixL();
        Rng stream = root.split(static_cast<std::uint64_t>(k));
        for (int i = 0; i < counts[k]; ++i, ++row) {
            samples.row(row) = (spec.means[k] + chol * gaussian_vector(stream, D)).transpose();
            labels[row] = k + 1;
        }
    }
    return LabeledDataset::create(std::move(samples), std::move(labels), K);
}

void SubspaceFamilySpec::validate() const {
    if (num_classes < 1) throw EmptyClass("subspace family needs at least one class");
    if (intrinsic_dim < 1 || intrinsic_dim >= ambient_dim)
        throw BadDimension("intrinsic dimension must satisfy 1 <= d < D");
    if (!(ball_radius > 0.0)) throw NonFinite("ball radius must be positive");
    if (noise == NoiseKind::Ambient && !(noise_sigma >= 0.0))
        throw NonFinite("ambient noise sigma must be nonnegative");
    if (noise == NoiseKind::Orthogonal && !(orthogonal_alpha > 0.0))
        throw NonFinite("orthogonal alpha must be positive");
    if (static_cast<int>(centers.size()) != num_classes ||
        static_cast<int>(bases.size()) != num_classes)
        throw DimensionMismatch("subspace family has wrong number of centers or bases");
    Tolerances tol;
    for (int k = 0; k < num_classes; ++k) {
        if (centers[k].size() != ambient_dim)
            throw DimensionMismatch("subspace center has wrong dimension");
        if (bases[k].rows() != ambient_dim || bases[k].cols() != intrinsic_dim)
            throw DimensionMismatch("subspace basis has wrong shape");
        const double ortho = (bases[k].transpose() * bases[k] -
                              Matrix::Identity(intrinsic_dim, intrinsic_dim))
                                 .cwiseAbs()
                                 .maxCoeff();
        if (ortho > tol.orthonormality) throw NonFinite("subspace basis is not orthonormal");
    }
    if (min_angle > 0.0) {
        for (int j = 0; j < num_classes; ++j)
            for (int k = j + 1; k < num_classes; ++k)
                if (largest_principal_angle(bases[j], bases[k]) < min_angle)
                    throw AngleInfeasible("subspace pair violates the minimum angle");
    }
}

double largest_principal_angle(const Matrix& b1, const Matrix& b2) {
    if (b1.rows() != b2.rows()) throw DimensionMismatch("bases live in different ambient spaces");
    Eigen::JacobiSVD<Matrix> svd(b1.transpose() * b2);
    const double smallest = svd.singularValues().minCoeff();
    return std::acos(std::clamp(smallest, 0.0, 1.0));
}

double ball_volume(int d, double radius) {
    if (d < 1) throw BadDimension("ball dimension must be positive");
    return std::pow(std::numbers::pi, d / 2.0) * std::pow(radius, d) /
           std::tgamma(d / 2.0 + 1.0);
}

SubspaceFamilySpec random_subspace_spec(int K, int D, int d, double min_angle, double M,
                                        NoiseKind kind, double noise_or_alpha, std::uint64_t seed,
                                        int max_attempts) {
    SubspaceFamilySpec spec;
    spec.num_classes = K;
    spec.ambient_dim = D;
    spec.intrinsic_dim = d;
    spec.ball_radius = M;
    spec.noise = kind;
    if (kind == NoiseKind::Ambient)
        spec.noise_sigma = noise_or_alpha;
    else
        spec.orthogonal_alpha = noise_or_alpha;
    spec.min_angle = min_angle;
    spec.centers.assign(K, Vector::Zero(D));

    if (K < 1) throw EmptyClass("subspace family needs at least one class");
    if (d < 1 || d >= D) throw BadDimension("intrinsic dimension must satisfy 1 <= d < D");

    Rng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Matrix> bases(K);
        for (int k = 0; k < K; ++k) {
            Matrix g(D, d);
            for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(rng, D);
            Eigen::HouseholderQR<Matrix> qr(g);
            bases[k] = qr.householderQ() * Matrix::Identity(D, d);
            detail::canonicalize_column_signs(bases[k]);
        }
        bool feasible = true;
        for (int j = 0; j < K && feasible; ++j)
            for (int k = j + 1; k < K && feasible; ++k)
                if (largest_principal_angle(bases[j], bases[k]) < min_angle) feasible = false;
        if (feasible) {
            spec.bases = std::move(bases);
            spec.validate();
            return spec;
        }
    }
    throw AngleInfeasible("could not draw subspaces satisfying the minimum angle");
}

SubspaceFamilySpec paper_subspace_spec(std::uint64_t seed) {
    return random_subspace_spec(3, 50, 2, std::numbers::pi / 8.0, 1.0, NoiseKind::Ambient, 0.05,
                                seed);
}

namespace {

// One sample of the class-k distribution: uniform point in the d-ball mapped
// through the basis, plus the family's off-subspace noise. Consumes a fixed
// number of draws per sample so streams stay aligned.
Vector sample_one(const SubspaceFamilySpec& spec, int k, Rng& rng) {
    const int D = spec.ambient_dim;
    const int d = spec.intrinsic_dim;
    Vector dir = gaussian_vector(rng, d);
    const double norm = dir.norm();
    if (norm > 0.0) dir /= norm;
    const double radius = spec.ball_radius * std::pow(rng.uniform01(), 1.0 / d);
    Vector x = spec.centers[k] + spec.bases[k] * (radius * dir);
    Vector noise = gaussian_vector(rng, D);
    if (spec.noise == NoiseKind::Ambient) {
        x += spec.noise_sigma * noise;
    } else {
        noise *= 1.0 / std::sqrt(2.0 * spec.orthogonal_alpha);
        x += noise - spec.bases[k] * (spec.bases[k].transpose() * noise);
    }
    return x;
}

}  // namespace

LabeledDataset sample_subspace_family(const SubspaceFamilySpec& spec, int n, std::uint64_t seed) {
    spec.validate();
    if (n < 1) throw BadDimension("sample count must be positive");
    const int K = spec.num_classes;
    const std::vector<double> priors(K, 1.0 / K);
    const std::vector<int> counts = allocate_counts(n, priors);

    Matrix samples(n, spec.ambient_dim);
    std::vector<int> labels(n);
    Rng root(seed);
    int row = 0;
    for (int k = 0; k < K; ++k) {
        Rng stream = root.split(static_cast<std::uint64_t>(k));
        for (int i = 0; i < counts[k]; ++i, ++row) {
            samples.row(row) = sample_one(spec, k, stream).transpose();
            labels[row] = k + 1;
        }
    }
    return LabeledDataset::create(std::move(samples), std::move(labels), K);
}

Matrix sample_subspace_class(const SubspaceFamilySpec& spec, int k, int n, std::uint64_t seed) {
    spec.validate();
    if (k < 1 || k > spec.num_classes) throw BadDimension("class index out of range");
    if (n < 1) throw BadDimension("sample count must be positive");
    Matrix samples(n, spec.ambient_dim);
    Rng stream = Rng(seed).split(static_cast<std::uint64_t>(k - 1));
    for (int i = 0; i < n; ++i) samples.row(i) = sample_one(spec, k - 1, stream).transpose();
    return samples;
}

double log_class_density(const SubspaceFamilySpec& spec, int k, const Vector& x) {
    if (!spec.orthogonal_mode())
        throw WrongMode("class densities are only closed-form in orthogonal mode");
    if (k < 1 || k > spec.num_classes) throw BadDimension("class index out of range");
    if (x.size() != spec.ambient_dim) throw DimensionMismatch("point has wrong dimension");
    const int D = spec.ambient_dim;
    const int d = spec.intrinsic_dim;
    const Vector y = x - spec.centers[k - 1];
    const Vector coords = spec.bases[k - 1].transpose() * y;
    if (coords.norm() > spec.ball_radius) return -std::numeric_limits<double>::infinity();
    const double t = std::max(y.squaredNorm() - coords.squaredNorm(), 0.0);
    const double alpha = spec.orthogonal_alpha;
    return -std::log(ball_volume(d, spec.ball_radius)) +
           0.5 * (D - d) * std::log(alpha / std::numbers::pi) - alpha * t;
}

double class_density(const SubspaceFamilySpec& spec, int k, const Vector& x) {
    const double lg = log_class_density(spec, k, x);
    return std::isinf(lg) ? 0.0 : std::exp(lg);
}

}  // namespace nss
