// SPDX-License-Identifier: Apache-2.0
#include "isac/matrixkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "isac/errors.hpp"

namespace isac {

CMatrix::CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    CMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw StructuralError("from_rows: ragged initializer");
        std::size_t j = 0;
        for (const auto& v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

std::vector<cplx> CMatrix::column(std::size_t c) const {
    std::vector<cplx> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

void CMatrix::set_column(std::size_t c, std::span<const cplx> values) {
    if (values.size() != rows_) throw StructuralError("set_column: length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = values[i];
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw StructuralError("matrix add: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw StructuralError("matrix subtract: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("matrix multiply: inner dimension mismatch");
    CMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

CMatrix gram(const CMatrix& a) {
    CMatrix g(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t r = 0; r < a.rows(); ++r) s += std::conj(a(r, i)) * a(r, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    for (std::size_t i = 0; i < a.cols(); ++i) g(i, i) = g(i, i).real();
    return g;
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (!a.square()) return false;
    double scale = 1.0;
    for (const auto& v : a.data()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol * scale) return false;
    return true;
}

namespace {

void require_hermitian(const CMatrix& a, const char* who) {
    if (!a.square())
        throw StructuralError(std::string(who) + ": matrix is not square (" + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + ")");
    if (!is_hermitian(a)) throw StructuralError(std::string(who) + ": matrix is not Hermitian");
}

// In-place lower Cholesky on an n x n row-major buffer. Returns sum of log2 pivots.
double cholesky_log2det(std::span<cplx> a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j].real();
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a[j * n + k]);
        if (!(d > 0.0) || !std::isfinite(d))
            throw NumericError("Cholesky failed: non-positive pivot at index " + std::to_string(j));
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        acc += std::log2(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            cplx s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * std::conj(a[j * n + k]);
            a[i * n + j] = s / ljj;
        }
    }
    return acc;
}

constexpr std::size_t kSmall = 8;

template <class Fill>
double with_work_buffer(std::size_t n, Fill&& fill) {
    if (n <= kSmall) {
        std::array<cplx, kSmall * kSmall> buf;
        std::span<cplx> work(buf.data(), n * n);
        fill(work);
        return cholesky_log2det(work, n);
    }
    std::vector<cplx> buf(n * n);
    fill(std::span<cplx>(buf));
    return cholesky_log2det(buf, n);
}

}  // namespace

HermitianEig hermitian_eig(const CMatrix& input) {
    require_hermitian(input, "hermitian_eig");
    const std::size_t n = input.rows();
    CMatrix a = input;
    CMatrix v = CMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double scale = a.frobenius_norm();
    constexpr int kMaxSweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-15 * scale || off == 0.0) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx e = apq / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx se = s * e;
                const cplx sec = s * std::conj(e);
                // A <- A J, V <- V J
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - sec * arq;
                    a(r, q) = se * arp + c * arq;
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp - sec * vrq;
                    v(r, q) = se * vrp + c * vrq;
                }
                // A <- J^H A
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a(p, col), aqc = a(q, col);
                    a(p, col) = c * apc - se * aqc;
                    a(q, col) = sec * apc + c * aqc;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged) throw NumericError("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    HermitianEig out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
    }
    return out;
}

double logdet_hpd(const CMatrix& a) {
    require_hermitian(a, "logdet_hpd");
    return with_work_buffer(a.rows(), [&](std::span<cplx> w) { std::copy(a.data().begin(), a.data().end(), w.begin()); });
}

double log2det_identity_plus(const CMatrix& g, double scale) {
    const std::size_t n = g.rows();
    if (!g.square()) throw StructuralError("log2det_identity_plus: matrix is not square");
    if (scale == 0.0) return 0.0;
    return with_work_buffer(n, [&](std::span<cplx> w) {
        const auto src = g.data();
        for (std::size_t i = 0; i < n * n; ++i) w[i] = scale * src[i];
        for (std::size_t i = 0; i < n; ++i) w[i * n + i] += 1.0;
    });
}

double inverse_quadratic_form(const CMatrix& a, std::span<const cplx> x) {
    const std::size_t n = a.rows();
    if (!a.square() || x.size() != n) throw StructuralError("inverse_quadratic_form: dimension mismatch");
    std::vector<cplx> l(a.data().begin(), a.data().end());
    cholesky_log2det(l, n);
    // forward substitution L y = x; x^H A^{-1} x = |y|^2
    std::vector<cplx> y(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        cplx s = x[i];
        for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * y[k];
        y[i] = s / l[i * n + i];
        acc += std::norm(y[i]);
    }
    return acc;
}

CMatrix psd_sqrt(const CMatrix& r) {
    const HermitianEig eig = hermitian_eig(r);
    const std::size_t n = r.rows();
    CMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double lambda = eig.values[j];
        if (lambda < -1e-12)
            throw StructuralError("psd_sqrt: matrix is not positive semi-definite (eigenvalue " +
                                  std::to_string(lambda) + ")");
        const double root = std::sqrt(std::max(lambda, 0.0));
        if (root == 0.0) continue;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                out(a, b) += root * eig.vectors(a, j) * std::conj(eig.vectors(b, j));
    }
    return out;
}

void fill_complex_gaussian(std::span<cplx> out, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    for (auto& v : out) {
        const double re = normal(rng);
        const double im = normal(rng);
        v = cplx(re, im);
    }
}

CMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    if (rows == 0 || cols == 0) throw StructuralError("sample_complex_gaussian: rows and cols must be >= 1");
    CMatrix m(rows, cols);
    fill_complex_gaussian(m.data(), rng);
    return m;
}

CMatrix correlated_columns(const CMatrix& r, std::size_t cols, Rng& rng) {
    const CMatrix root = psd_sqrt(r);
    return root * sample_complex_gaussian(r.rows(), cols, rng);
}

}  // namespace isac
