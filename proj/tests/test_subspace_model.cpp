#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "nss/errors.hpp"
#include "nss/rng.hpp"
#include "nss/subspace.hpp"
#include "support/charpoly.hpp"

using namespace nss;

namespace {

Matrix random_rows(Rng& rng, int n, int D, double scale = 2.0) {
    Matrix rows(n, D);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < D; ++j) rows(i, j) = rng.uniform(-scale, scale);
    return rows;
}

Matrix random_orthonormal(Rng& rng, int rows, int cols) {
    Matrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(rows, cols);
}

}  // namespace

TEST_CASE("fit_subspace on x-axis points") {
    Matrix rows(3, 2);
    rows << -1, 0, 0.5, 0, 2, 0;
    const SubspaceModel m = fit_subspace(rows, 1);
    CHECK(m.mean[1] == 0.0);
    const Matrix p = m.basis * m.basis.transpose();
    CHECK(p(0, 0) == doctest::Approx(1.0));
    CHECK(std::abs(p(0, 1)) < 1e-12);
    CHECK(std::abs(p(1, 1)) < 1e-12);
    CHECK_FALSE(m.degenerate);
}

TEST_CASE("fit_subspace on (+-1, +-eps, 0) agrees with the charpoly oracle") {
    const double eps = 0.01;
    Matrix rows(4, 3);
    rows << 1, eps, 0, 1, -eps, 0, -1, eps, 0, -1, -eps, 0;
    const SubspaceModel m = fit_subspace(rows, 1);
    const Matrix p = m.basis * m.basis.transpose();
    Matrix e1e1 = Matrix::Zero(3, 3);
    e1e1(0, 0) = 1.0;
    CHECK((p - e1e1).cwiseAbs().maxCoeff() < 1e-3);

    // independent spectrum check on the scatter
    Matrix centered = rows.rowwise() - m.mean.transpose();
    const Matrix scatter = centered.transpose() * centered;
    const auto roots = oracle::symmetric_eigenvalues(scatter);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(4.0));             // 4 points, x-variance 1
    CHECK(roots[1] == doctest::Approx(4.0 * eps * eps)); // y-variance eps^2
    CHECK(fit_objective(rows, m) == doctest::Approx(roots[1] + roots[2]).epsilon(1e-6));
}

TEST_CASE("residual sum equals the tail eigenvalue sum (Eckart-Young)") {
    Rng rng(31);
    for (int rep = 0; rep < 25; ++rep) {
        const int D = 2 + rng.uniform_int(5);
        const int n = D + 1 + rng.uniform_int(20);
        const int d = 1 + rng.uniform_int(D - 1);
        const Matrix rows = random_rows(rng, n, D);
        const SubspaceModel m = fit_subspace(rows, d);
        const Matrix centered = rows.rowwise() - m.mean.transpose();
        const auto roots = oracle::symmetric_eigenvalues(centered.transpose() * centered);
        double tail = 0.0;
        for (int i = d; i < D; ++i) tail += roots[static_cast<size_t>(i)];
        CHECK(fit_objective(rows, m) == doctest::Approx(tail).epsilon(1e-8));
    }
}

TEST_CASE("residual basics") {
    Rng rng(37);
    const Matrix rows = random_rows(rng, 12, 4);
    const SubspaceModel m = fit_subspace(rows, 2);

    CHECK(residual(m.mean, m) == 0.0);
    for (double t : {-3.0, 0.25, 7.0}) {
        const Vector x = m.mean + t * m.basis.col(0) - 2 * t * m.basis.col(1);
        CHECK(residual(x, m) <= 1e-10);
    }
    // w orthogonal to the basis with norm 2 -> residual 4
    Vector w = Vector::Ones(4);
    w -= m.basis * (m.basis.transpose() * w);
    w *= 2.0 / w.norm();
    CHECK(residual(m.mean + w, m) == doctest::Approx(4.0).epsilon(1e-10));

    CHECK_THROWS_AS(residual(Vector::Zero(5), m), DimensionMismatch);
}

TEST_CASE("residual agrees with the explicit projector") {
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const int D = 2 + rng.uniform_int(6);
        const Matrix rows = random_rows(rng, D + 5, D);
        const int d = 1 + rng.uniform_int(D - 1);
        const SubspaceModel m = fit_subspace(rows, d);
        const Matrix ortho = Matrix::Identity(D, D) - m.basis * m.basis.transpose();
        for (int i = 0; i < 10; ++i) {
            Vector x(D);
            for (int j = 0; j < D; ++j) x[j] = rng.uniform(-5, 5);
            CHECK(residual(x, m) ==
                  doctest::Approx((ortho * (x - m.mean)).squaredNorm()).epsilon(1e-8));
            CHECK(residual(x, m) >= 0.0);
        }
        const Vector batch = residuals(rows, m);
        for (int i = 0; i < rows.rows(); ++i)
            CHECK(batch[i] == doctest::Approx(residual(rows.row(i).transpose(), m)).epsilon(1e-12));
    }
}

TEST_CASE("translation and rotation equivariance") {
    Rng rng(43);
    const int D = 5, n = 20, d = 2;
    const Matrix rows = random_rows(rng, n, D);
    const SubspaceModel base = fit_subspace(rows, d);
    Vector x(D), c(D);
    for (int j = 0; j < D; ++j) {
        x[j] = rng.uniform(-4, 4);
        c[j] = rng.uniform(-10, 10);
    }

    const SubspaceModel shifted = fit_subspace(rows.rowwise() + c.transpose(), d);
    CHECK(residual(x + c, shifted) == doctest::Approx(residual(x, base)).epsilon(1e-8));

    const Matrix q = random_orthonormal(rng, D, D);
    const SubspaceModel rotated = fit_subspace(rows * q.transpose(), d);
    CHECK(residual(q * x, rotated) == doctest::Approx(residual(x, base)).epsilon(1e-8));
}

TEST_CASE("fitted basis beats 100 random orthonormal candidates") {
    Rng rng(47);
    const int D = 6, n = 40, d = 2;
    const Matrix rows = random_rows(rng, n, D);
    const SubspaceModel m = fit_subspace(rows, d);
    const double best = fit_objective(rows, m);
    for (int cand = 0; cand < 100; ++cand) {
        SubspaceModel other = m;
        other.basis = random_orthonormal(rng, D, d);
        CHECK(fit_objective(rows, other) >= best - 1e-8);
    }
}

TEST_CASE("degenerate classes are padded and flagged") {
    Matrix rows(2, 4);
    rows << 1, 0, 0, 0, -1, 0, 0, 0;
    const SubspaceModel m = fit_subspace(rows, 3);  // 2 points < d+1
    CHECK(m.degenerate);
    CHECK(m.dim() == 3);
    validate_subspace(m);
}

TEST_CASE("fit_subspace error paths") {
    CHECK_THROWS_AS(fit_subspace(Matrix(0, 3), 1), EmptyClass);
    Matrix rows(4, 3);
    rows.setRandom();
    CHECK_THROWS_AS(fit_subspace(rows, 3), BadDimension);
    CHECK_THROWS_AS(fit_subspace(rows, 0), BadDimension);
}

TEST_CASE("serialization round-trips bit-losslessly") {
    Rng rng(53);
    const Matrix rows = random_rows(rng, 15, 4);
    const SubspaceModel m = fit_subspace(rows, 2);

    std::stringstream buf;
    write_subspace(buf, m);
    const SubspaceModel back = read_subspace(buf);
    CHECK(back.mean == m.mean);
    CHECK(back.basis == m.basis);
    for (int i = 0; i < 10; ++i) {
        Vector x(4);
        for (int j = 0; j < 4; ++j) x[j] = rng.uniform(-3, 3);
        CHECK(residual(x, back) == residual(x, m));
    }
}
