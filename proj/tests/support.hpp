// SPDX-License-Identifier: Apache-2.0
#pragma once
#include <random>

#include "isac/matrixkit.hpp"
#include "oracles.hpp"

namespace testing {

inline oracle::Mat to_mat(const isac::CMatrix& a) {
    oracle::Mat m = oracle::zeros(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    return m;
}

/// Random complex matrix with entries uniform in the unit square, from std::mt19937_64.
inline isac::CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    isac::CMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = isac::cplx(u(gen), u(gen));
    return a;
}

inline isac::CMatrix random_hermitian(std::size_t n, std::mt19937_64& gen) {
    const isac::CMatrix b = random_matrix(n, n, gen);
    return b + b.adjoint();
}

}  // namespace testing
