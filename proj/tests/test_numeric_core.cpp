#include <doctest.h>

#include <cmath>
#include <vector>

#include "nss/datagen.hpp"
#include "nss/errors.hpp"
#include "nss/linalg.hpp"
#include "nss/rng.hpp"
#include "support/charpoly.hpp"

using namespace nss;

namespace {

Matrix random_symmetric(Rng& rng, int n, double scale = 2.0) {
    Matrix s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s(i, j) = s(j, i) = rng.uniform(-scale, scale);
    return s;
}

Matrix random_orthonormal(Rng& rng, int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(rows, cols);
}

}  // namespace

TEST_CASE("mean_vector basics") {
    CHECK(mean_vector(std::vector<Vector>{Vector{{1, 2, 3}}, Vector{{-1, -2, -3}}}).isZero(0.0));
    CHECK(mean_vector(std::vector<Vector>{Vector{{2, 0}}}) == Vector{{2, 0}});
    CHECK_THROWS_AS(mean_vector(std::vector<Vector>{}), EmptyClass);
    CHECK_THROWS_AS(mean_vector(std::vector<Vector>{Vector{{1, 2}}, Vector{{1, 2, 3}}}),
                    DimensionMismatch);
}

TEST_CASE("mean_vector recovers a Gaussian mean at n=400") {
    const GaussianMixtureSpec spec = paper_gaussian_spec();
    GaussianMixtureSpec one;
    one.means = {spec.means[0]};
    one.covariances = {spec.covariances[0]};
    one.priors = {1.0};
    const LabeledDataset data = sample_gaussian_mixture(one, 400, 17);
    const Vector mean = mean_vector(data.samples);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i] - spec.means[0][i]) < 0.4);
}

TEST_CASE("centered_scatter basics") {
    const Matrix s = centered_scatter(std::vector<Vector>{Vector{{1, 0}}, Vector{{-1, 0}}},
                                      Vector::Zero(2));
    CHECK(s(0, 0) == doctest::Approx(2.0));
    CHECK(s(0, 1) == 0.0);
    CHECK(s(1, 0) == 0.0);
    CHECK(s(1, 1) == 0.0);

    const Vector p{{1, 1}};
    CHECK(centered_scatter(std::vector<Vector>{p}, p).isZero(0.0));
    CHECK_THROWS_AS(centered_scatter(std::vector<Vector>{Vector{{1, 2}}}, Vector::Zero(3)),
                    DimensionMismatch);
}

TEST_CASE("centered_scatter is symmetric PSD on random input") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + rng.uniform_int(20);
        const int D = 1 + rng.uniform_int(6);
        Matrix rows(n, D);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < D; ++j) rows(i, j) = rng.uniform(-3, 3);
        const Vector center = mean_vector(rows);
        const Matrix s = centered_scatter(rows, center);
        CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        const EigenPairs pairs = top_eigenpairs(s, D);
        CHECK(pairs.values.minCoeff() >= -1e-9);
    }
}

TEST_CASE("top_eigenpairs on diag(3,2,1)") {
    const Matrix s = Vector{{3, 2, 1}}.asDiagonal();
    const EigenPairs pairs = top_eigenpairs(s, 2);
    CHECK(pairs.values[0] == doctest::Approx(3.0));
    CHECK(pairs.values[1] == doctest::Approx(2.0));
    // spans e1 then e2, signs canonical
    CHECK(pairs.vectors(0, 0) == doctest::Approx(1.0));
    CHECK(pairs.vectors(1, 1) == doctest::Approx(1.0));
    CHECK(std::abs(pairs.vectors(1, 0)) < 1e-12);
}

TEST_CASE("top_eigenpairs on the identity asserts the residual property only") {
    const Matrix s = Matrix::Identity(3, 3);
    const EigenPairs pairs = top_eigenpairs(s, 1);
    CHECK(pairs.values[0] == doctest::Approx(1.0));
    const Vector v = pairs.vectors.col(0);
    CHECK(v.norm() == doctest::Approx(1.0));
    CHECK((s * v - v).norm() <= 1e-10);
}

TEST_CASE("top_eigenpairs matches the hand charpoly of [[2,1],[1,2]]") {
    Matrix s(2, 2);
    s << 2, 1, 1, 2;
    const EigenPairs pairs = top_eigenpairs(s, 1);
    // det(lambda I - S) = lambda^2 - 4 lambda + 3, roots 3 and 1
    const auto coeffs = oracle::charpoly_coefficients(s);
    CHECK(coeffs[0] == doctest::Approx(3.0));
    CHECK(coeffs[1] == doctest::Approx(-4.0));
    CHECK(coeffs[2] == doctest::Approx(1.0));
    CHECK(pairs.values[0] == doctest::Approx(3.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(pairs.vectors(0, 0) == doctest::Approx(inv_sqrt2));
    CHECK(pairs.vectors(1, 0) == doctest::Approx(inv_sqrt2));
}

TEST_CASE("top_eigenpairs error paths") {
    Matrix bad(2, 2);
    bad << 1, 2, 3, 4;
    CHECK_THROWS_AS(top_eigenpairs(bad, 1), NotSymmetric);
    const Matrix id = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(top_eigenpairs(id, 0), BadDimension);
    CHECK_THROWS_AS(top_eigenpairs(id, 3), BadDimension);
}

TEST_CASE("eigenvalues match the characteristic-polynomial oracle") {
    Rng rng(11);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 2 + rng.uniform_int(5);
        const Matrix s = random_symmetric(rng, n);
        const EigenPairs pairs = top_eigenpairs(s, n);
        const std::vector<double> roots = oracle::symmetric_eigenvalues(s);
        REQUIRE(static_cast<int>(roots.size()) == n);
        for (int i = 0; i < n; ++i) CHECK(std::abs(pairs.values[i] - roots[i]) <= 1e-6);
    }
}

TEST_CASE("eigenpair invariants: residual, orthonormality, order, signs") {
    Rng rng(13);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + rng.uniform_int(5);
        const int d = 1 + rng.uniform_int(n);
        const Matrix s = random_symmetric(rng, n);
        const EigenPairs pairs = top_eigenpairs(s, d);
        for (int i = 0; i < d; ++i) {
            const Vector v = pairs.vectors.col(i);
            CHECK((s * v - pairs.values[i] * v).norm() <=
                  1e-6 * std::max(1.0, std::abs(pairs.values[i])));
            if (i > 0) CHECK(pairs.values[i] <= pairs.values[i - 1] + 1e-12);
            // canonical sign: the largest-magnitude entry is positive
            int arg = 0;
            v.cwiseAbs().maxCoeff(&arg);
            CHECK(v[arg] > 0.0);
        }
        const Matrix gram = pairs.vectors.transpose() * pairs.vectors;
        CHECK((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-8);
    }
}

TEST_CASE("projector property") {
    Rng rng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 3 + rng.uniform_int(4);
        const int d = 1 + rng.uniform_int(n - 1);
        const Matrix s = random_symmetric(rng, n);
        const Matrix b = top_eigenpairs(s, d).vectors;
        const Matrix p = b * b.transpose();
        CHECK((p - p.transpose()).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-8);
        CHECK(p.trace() == doctest::Approx(d).epsilon(1e-8));
    }
}

TEST_CASE("Rayleigh optimality and the trace sum rule") {
    Rng rng(19);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 3 + rng.uniform_int(4);
        const int d = 1 + rng.uniform_int(n - 1);
        const Matrix s = random_symmetric(rng, n);
        const EigenPairs full = top_eigenpairs(s, n);
        CHECK(full.values.sum() ==
              doctest::Approx(s.trace()).epsilon(1e-8 * std::max(1.0, std::abs(s.trace()))));

        const double best = full.values.head(d).sum();
        for (int cand = 0; cand < 50; ++cand) {
            const Matrix b = random_orthonormal(rng, n, d);
            CHECK((b.transpose() * s * b).trace() <= best + 1e-8);
        }
    }
}

TEST_CASE("top_eigenpairs is deterministic") {
    Rng rng(23);
    const Matrix s = random_symmetric(rng, 5);
    const EigenPairs a = top_eigenpairs(s, 3);
    const EigenPairs b = top_eigenpairs(s, 3);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
}
