// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "isac/errors.hpp"
#include "isac/matrixkit.hpp"
#include "isac/rng.hpp"
#include "support.hpp"

using namespace isac;

namespace {

CMatrix reconstruct(const HermitianEig& e) {
    CMatrix d = CMatrix::diagonal(e.values);
    return e.vectors * d * e.vectors.adjoint();
}

}  // namespace

TEST_CASE("hermitian_eig on identity and diagonal inputs") {
    const HermitianEig id = hermitian_eig(CMatrix::identity(3));
    for (double v : id.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

    const double eigs[] = {0.05, 1.0, 0.1};
    const HermitianEig d = hermitian_eig(CMatrix::diagonal(eigs));
    REQUIRE(d.values.size() == 3);
    CHECK(d.values[0] == 1.0);
    CHECK(d.values[1] == 0.1);
    CHECK(d.values[2] == 0.05);
    // permutation of the identity: one unit entry per column
    for (std::size_t c = 0; c < 3; ++c) {
        double ones = 0.0, rest = 0.0;
        for (std::size_t r = 0; r < 3; ++r) (std::abs(d.vectors(r, c)) > 0.5 ? ones : rest) += std::abs(d.vectors(r, c));
        CHECK(ones == doctest::Approx(1.0));
        CHECK(rest == 0.0);
    }
    CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig matches characteristic polynomial roots") {
    std::mt19937_64 gen(20240611);
    for (int trial = 0; trial < 25; ++trial) {
        const CMatrix a = testing::random_hermitian(4, gen);
        const std::vector<double> roots = oracle::eigenvalues_by_roots(testing::to_mat(a));
        const HermitianEig e = hermitian_eig(a);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(e.values[i] - roots[i]) <= 1e-8);
    }
}

TEST_CASE("hermitian_eig reconstruction and unitarity") {
    std::mt19937_64 gen(7);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int trial = 0; trial < 10; ++trial) {
            const CMatrix a = testing::random_hermitian(n, gen);
            const HermitianEig e = hermitian_eig(a);
            CHECK((reconstruct(e) - a).frobenius_norm() <= 1e-9 * (1.0 + a.frobenius_norm()));
            CHECK((e.vectors.adjoint() * e.vectors - CMatrix::identity(n)).frobenius_norm() <= 1e-10);
            for (std::size_t i = 1; i < n; ++i) CHECK(e.values[i - 1] >= e.values[i]);
        }
}

TEST_CASE("hermitian_eig rejects non-square and non-Hermitian input") {
    CHECK_THROWS_AS(hermitian_eig(CMatrix(2, 3)), StructuralError);
    const CMatrix skew = CMatrix::from_rows({{1.0, cplx(0, 1)}, {cplx(0, 1), 1.0}});
    CHECK_THROWS_AS(hermitian_eig(skew), StructuralError);
}

TEST_CASE("logdet_hpd closed-form values") {
    CHECK(logdet_hpd(CMatrix::identity(5)) == 0.0);
    const double d[] = {2.0, 4.0};
    CHECK(logdet_hpd(CMatrix::diagonal(d)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(log2det_identity_plus(CMatrix::identity(3), 0.0) == 0.0);
}

TEST_CASE("logdet_hpd names the failing pivot") {
    const double d[] = {1.0, -2.0, 3.0};
    try {
        (void)logdet_hpd(CMatrix::diagonal(d));
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("index 1") != std::string::npos);
    }
}

TEST_CASE("logdet_hpd agrees with an LU determinant") {
    std::mt19937_64 gen(99);
    for (std::size_t n = 1; n <= 8; ++n) {
        const CMatrix x = testing::random_matrix(n, n, gen);
        const CMatrix a = CMatrix::identity(n) + x * x.adjoint();
        CHECK(logdet_hpd(a) == doctest::Approx(oracle::lu_log2det(testing::to_mat(a))).epsilon(1e-12));
    }
}

TEST_CASE("logdet of a matrix and its inverse cancel") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix x = testing::random_matrix(4, 4, gen);
        const CMatrix a = CMatrix::identity(4) + x * x.adjoint();
        HermitianEig e = hermitian_eig(a);
        for (double& v : e.values) v = 1.0 / v;
        CMatrix inv = reconstruct(e);
        inv = 0.5 * (inv + inv.adjoint());
        CHECK(std::abs(logdet_hpd(a) + logdet_hpd(inv)) <= 1e-8);
    }
}

TEST_CASE("Sylvester determinant identity") {
    std::mt19937_64 gen(11);
    for (std::size_t rows = 1; rows <= 5; ++rows)
        for (std::size_t cols = 1; cols <= 5; ++cols) {
            const CMatrix x = testing::random_matrix(rows, cols, gen);
            const double outer = logdet_hpd(CMatrix::identity(rows) + x * x.adjoint());
            const double inner = logdet_hpd(CMatrix::identity(cols) + x.adjoint() * x);
            CHECK(std::abs(outer - inner) <= 1e-9);
            CHECK(log2det_identity_plus(gram(x), 2.5) ==
                  doctest::Approx(logdet_hpd(CMatrix::identity(rows) + cplx(2.5) * (x * x.adjoint()))).epsilon(1e-12));
        }
}

TEST_CASE("complex Gaussian sampling") {
    Rng a(42), b(42);
    CHECK(sample_complex_gaussian(2, 2, a) == sample_complex_gaussian(2, 2, b));

    Rng big(5);
    const CMatrix m = sample_complex_gaussian(100, 100, big);
    double power = 0.0;
    for (const cplx& v : m.data()) power += std::norm(v);
    power /= 1e4;
    CHECK(power >= 0.97);
    CHECK(power <= 1.03);

    Rng s0(1000), s1(1001);
    CHECK(sample_complex_gaussian(1, 1, s0)(0, 0) != sample_complex_gaussian(1, 1, s1)(0, 0));

    Rng r(1);
    CHECK_THROWS_AS(sample_complex_gaussian(0, 3, r), StructuralError);
}

TEST_CASE("correlated_columns covariance") {
    Rng a(8), b(8);
    CHECK(correlated_columns(CMatrix::identity(3), 4, a) == sample_complex_gaussian(3, 4, b));

    const double eigs[] = {1.0, 0.1, 0.05};
    const CMatrix r = CMatrix::diagonal(eigs);
    Rng rng(77);
    const CMatrix g = correlated_columns(r, 10000, rng);
    std::vector<std::vector<cplx>> cols;
    for (std::size_t c = 0; c < g.cols(); ++c) cols.push_back(g.column(c));
    CHECK(oracle::rel_frobenius_error(oracle::sample_covariance(cols), testing::to_mat(r)) < 0.05);

    Rng z(1);
    const CMatrix zero = correlated_columns(CMatrix(3, 3), 5, z);
    for (const cplx& v : zero.data()) CHECK(v == cplx(0.0));

    const double indefinite[] = {1.0, -0.5};
    Rng q(1);
    CHECK_THROWS_AS(correlated_columns(CMatrix::diagonal(indefinite), 2, q), StructuralError);
}

TEST_CASE("psd_sqrt clamps round-off negatives") {
    const double tiny[] = {4.0, -1e-13};
    const CMatrix s = psd_sqrt(CMatrix::diagonal(tiny));
    CHECK(s(0, 0).real() == doctest::Approx(2.0));
    CHECK(s(1, 1) == cplx(0.0));
}
