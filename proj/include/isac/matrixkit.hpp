// SPDX-License-Identifier: Apache-2.0
//
// Small dense complex-matrix kernels: storage, Hermitian eigendecomposition (cyclic Jacobi),
// Cholesky-based log-determinants and seeded complex Gaussian sampling. All matrices in this
// project are at most a few rows across, so everything here favours clarity over blocking.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "isac/rng.hpp"

namespace isac {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const double> values);
    static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    CMatrix adjoint() const;
    std::vector<cplx> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const cplx> values);
    double frobenius_norm() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(cplx s);

    friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
    friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
    friend CMatrix operator*(CMatrix m, cplx s) { return m *= s; }
    friend CMatrix operator*(cplx s, CMatrix m) { return m *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// A^H A without forming the adjoint.
CMatrix gram(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = 1e-12);

/// Eigenpairs of a Hermitian matrix: A = vectors * diag(values) * vectors^H.
struct HermitianEig {
    std::vector<double> values;  // descending
    CMatrix vectors;             // unitary, column j pairs with values[j]
};

/// Cyclic complex Jacobi. Throws StructuralError for non-square or non-Hermitian input and
/// NumericError if the sweep limit is reached.
HermitianEig hermitian_eig(const CMatrix& a);

/// Base-2 log-determinant of a Hermitian positive-definite matrix via Cholesky.
/// Throws NumericError naming the first non-positive pivot.
double logdet_hpd(const CMatrix& a);

/// log2 det(I + scale * g) for Hermitian PSD g and scale >= 0. Allocation-free for sizes up to 8.
double log2det_identity_plus(const CMatrix& g, double scale);

/// x^H A^{-1} x for Hermitian positive-definite A.
double inverse_quadratic_form(const CMatrix& a, std::span<const cplx> x);

/// Hermitian PSD square root. Eigenvalues in [-1e-12, 0) are clamped to zero, anything more
/// negative is rejected with StructuralError.
CMatrix psd_sqrt(const CMatrix& r);

/// Entries with independent N(0, 1/2) real and imaginary parts (unit complex variance).
CMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

void fill_complex_gaussian(std::span<cplx> out, Rng& rng);

/// `cols` independent CN(0, R) columns, built as R^{1/2} times standard Gaussian columns.
CMatrix correlated_columns(const CMatrix& r, std::size_t cols, Rng& rng);

}  // namespace isac
