#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nss/datagen.hpp"
#include "nss/errors.hpp"
#include "nss/linalg.hpp"
#include "support/stats.hpp"

using namespace nss;

namespace {

// Pearson chi-square p-value for values that should be U(0,1).
double uniform_gof_pvalue(const std::vector<double>& u, int bins) {
    std::vector<int> counts(static_cast<size_t>(bins), 0);
    for (double v : u) {
        int b = static_cast<int>(v * bins);
        b = std::min(std::max(b, 0), bins - 1);
        ++counts[static_cast<size_t>(b)];
    }
    const double expected = static_cast<double>(u.size()) / bins;
    double stat = 0.0;
    for (int c : counts) stat += (c - expected) * (c - expected) / expected;
    return oracle::chi_square_sf(stat, bins - 1);
}

SubspaceFamilySpec axis_family(double alpha, double M) {
    SubspaceFamilySpec spec;
    spec.num_classes = 1;
    spec.ambient_dim = 2;
    spec.intrinsic_dim = 1;
    spec.ball_radius = M;
    spec.noise = NoiseKind::Orthogonal;
    spec.orthogonal_alpha = alpha;
    spec.centers = {Vector::Zero(2)};
    Matrix basis(2, 1);
    basis << 1, 0;
    spec.bases = {basis};
    return spec;
}

}  // namespace

TEST_CASE("paper_gaussian_spec carries the published constants") {
    const GaussianMixtureSpec spec = paper_gaussian_spec();
    spec.validate();
    CHECK(spec.means[0] == Vector{{1, 2, 3}});
    CHECK(spec.means[1] == Vector{{-1, -2, -3}});
    CHECK(spec.means[2] == Vector{{-1, 2, -3}});
    CHECK(spec.covariances[0](0, 0) == 3.0);
    CHECK(spec.covariances[0](0, 1) == 0.2);
    CHECK(spec.covariances[0](0, 2) == 0.1);
    CHECK(spec.covariances[0](1, 2) == 0.2);
    CHECK(spec.covariances[1] == Matrix(Vector{{2, 1, 1}}.asDiagonal()));
    CHECK(spec.covariances[2] == Matrix(Vector{{2, 2, 3}}.asDiagonal()));
    CHECK(spec.priors[0] + spec.priors[1] + spec.priors[2] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sample_gaussian_mixture balance and determinism") {
    const GaussianMixtureSpec spec = paper_gaussian_spec();
    const LabeledDataset a = sample_gaussian_mixture(spec, 1200, 42);
    CHECK(a.class_counts() == std::vector<int>{400, 400, 400});

    const LabeledDataset b = sample_gaussian_mixture(spec, 1200, 42);
    CHECK(a.samples == b.samples);
    CHECK(a.labels == b.labels);

    const LabeledDataset c = sample_gaussian_mixture(spec, 1200, 43);
    CHECK(a.samples != c.samples);
}

TEST_CASE("class-2 sample covariance approaches Sigma_2") {
    const GaussianMixtureSpec spec = paper_gaussian_spec();
    const LabeledDataset data = sample_gaussian_mixture(spec, 300000, 3);
    const Matrix rows = data.class_rows(2);
    REQUIRE(rows.rows() == 100000);
    const Vector mean = mean_vector(rows);
    const Matrix cov = centered_scatter(rows, mean) / (rows.rows() - 1.0);
    CHECK((cov - spec.covariances[1]).cwiseAbs().maxCoeff() < 0.05);

    // sample mean within 4*sigma_max/sqrt(n)
    const double limit = 4.0 * std::sqrt(2.0) / std::sqrt(static_cast<double>(rows.rows()));
    CHECK((mean - spec.means[1]).cwiseAbs().maxCoeff() < limit);
}

TEST_CASE("random_subspace_spec honors the angle constraint") {
    const SubspaceFamilySpec spec = random_subspace_spec(3, 50, 2, std::numbers::pi / 8, 1.0,
                                                         NoiseKind::Ambient, 0.05, 7);
    for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k)
            CHECK(largest_principal_angle(spec.bases[static_cast<size_t>(j)],
                                          spec.bases[static_cast<size_t>(k)]) >=
                  std::numbers::pi / 8);
    // recomputing the angles via validate matches the acceptance check
    CHECK_NOTHROW(spec.validate());

    const SubspaceFamilySpec easy =
        random_subspace_spec(2, 4, 2, 1e-9, 1.0, NoiseKind::Ambient, 0.0, 8);
    CHECK_NOTHROW(easy.validate());
}

TEST_CASE("infeasible angle constraints are rejected") {
    // three lines in the plane cannot be pairwise >= 80 degrees apart
    CHECK_THROWS_AS(random_subspace_spec(3, 2, 1, 80.0 * std::numbers::pi / 180, 1.0,
                                         NoiseKind::Ambient, 0.0, 9, 200),
                    AngleInfeasible);
}

TEST_CASE("subspace sampler determinism and noiseless residuals") {
    const SubspaceFamilySpec family = paper_subspace_spec(11);
    const LabeledDataset a = sample_subspace_family(family, 600, 12);
    const LabeledDataset b = sample_subspace_family(family, 600, 12);
    CHECK(a.samples == b.samples);

    SubspaceFamilySpec clean = family;
    clean.noise_sigma = 0.0;
    const LabeledDataset quiet = sample_subspace_family(clean, 300, 13);
    for (int i = 0; i < quiet.n(); ++i) {
        const int k = quiet.labels[static_cast<size_t>(i)] - 1;
        const Vector y = quiet.samples.row(i).transpose() - clean.centers[static_cast<size_t>(k)];
        const double t =
            y.squaredNorm() - (clean.bases[static_cast<size_t>(k)].transpose() * y).squaredNorm();
        CHECK(std::abs(t) <= 1e-10);
    }
}

TEST_CASE("orthogonal-noise residual mean matches (D-d)/(2 alpha)") {
    const SubspaceFamilySpec family =
        random_subspace_spec(1, 20, 2, 0.0, 1.0, NoiseKind::Orthogonal, 200.0, 21);
    const Matrix rows = sample_subspace_class(family, 1, 100000, 22);
    double sum = 0.0;
    for (int i = 0; i < rows.rows(); ++i) {
        const Vector y = rows.row(i).transpose() - family.centers[0];
        sum += y.squaredNorm() - (family.bases[0].transpose() * y).squaredNorm();
    }
    const double expected = (20.0 - 2.0) / (2.0 * 200.0);
    CHECK(sum / rows.rows() == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("on-subspace radius follows the d=2 area law") {
    const SubspaceFamilySpec family = paper_subspace_spec(31);
    const Matrix rows = sample_subspace_class(family, 1, 100000, 32);
    int inside = 0;
    for (int i = 0; i < rows.rows(); ++i) {
        const Vector y = rows.row(i).transpose() - family.centers[0];
        if ((family.bases[0].transpose() * y).norm() <= 0.5) ++inside;
    }
    CHECK(std::abs(inside / 100000.0 - 0.25) < 0.02);
}

TEST_CASE("class_density closed form") {
    const SubspaceFamilySpec family =
        random_subspace_spec(2, 10, 2, 0.1, 1.0, NoiseKind::Orthogonal, 200.0, 41);
    const int D = 10, d = 2;
    const double expected_peak =
        (1.0 / ball_volume(d, 1.0)) * std::pow(200.0 / std::numbers::pi, (D - d) / 2.0);
    CHECK(class_density(family, 1, family.centers[0]) ==
          doctest::Approx(expected_peak).epsilon(1e-12));

    // outside the on-subspace ball the density vanishes
    const Vector outside = family.centers[0] + 1.5 * family.bases[0].col(0);
    CHECK(class_density(family, 1, outside) == 0.0);

    SubspaceFamilySpec ambient = family;
    ambient.noise = NoiseKind::Ambient;
    ambient.noise_sigma = 0.05;
    CHECK_THROWS_AS(class_density(ambient, 1, family.centers[0]), WrongMode);
}

TEST_CASE("class_density integrates to 1 (D=2, d=1 quadrature)") {
    const double alpha = 50.0;
    const SubspaceFamilySpec family = axis_family(alpha, 1.0);
    const int ns = 2000, nw = 2000;
    const double s_lo = -1.0, s_hi = 1.0, w_lo = -0.9, w_hi = 0.9;
    const double hs = (s_hi - s_lo) / ns, hw = (w_hi - w_lo) / nw;
    double integral = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double s = s_lo + (i + 0.5) * hs;
        double column = 0.0;
        for (int j = 0; j < nw; ++j) {
            const double w = w_lo + (j + 0.5) * hw;
            column += class_density(family, 1, Vector{{s, w}});
        }
        integral += column;
    }
    integral *= hs * hw;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("sampler matches class_density (chi-square GOF at n=50000)") {
    const int D = 5, d = 2;
    const double alpha = 200.0, M = 1.0;
    const SubspaceFamilySpec family =
        random_subspace_spec(1, D, d, 0.0, M, NoiseKind::Orthogonal, alpha, 51);
    const Matrix rows = sample_subspace_class(family, 1, 50000, 52);

    std::vector<double> u_t, u_r;
    for (int i = 0; i < rows.rows(); ++i) {
        const Vector y = rows.row(i).transpose() - family.centers[0];
        const Vector coords = family.bases[0].transpose() * y;
        const double t = y.squaredNorm() - coords.squaredNorm();
        // 2*alpha*t ~ chi-square with D-d dof; CDF transform to uniform
        u_t.push_back(1.0 - oracle::chi_square_sf(2.0 * alpha * t, D - d));
        // radius CDF is (r/M)^d
        u_r.push_back(std::pow(coords.norm() / M, d));
    }
    CHECK(uniform_gof_pvalue(u_t, 20) > 0.001);
    CHECK(uniform_gof_pvalue(u_r, 20) > 0.001);
}

TEST_CASE("ball volumes") {
    CHECK(ball_volume(1, 1.0) == doctest::Approx(2.0));
    CHECK(ball_volume(2, 1.0) == doctest::Approx(std::numbers::pi));
    CHECK(ball_volume(3, 2.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi * 8.0));
}
