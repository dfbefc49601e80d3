// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <string>

#include "isac/comms.hpp"
#include "isac/errors.hpp"
#include "isac/model.hpp"
#include "support.hpp"

using namespace isac;

namespace {

std::string validation_message(const SystemConfig& cfg) {
    try {
        validate_config(cfg);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("reference scenario validates") {
    const SystemConfig cfg = reference_config();
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(cfg.M == 3);
    CHECK(cfg.L == 4);
}

TEST_CASE("each violated constraint is named") {
    SystemConfig cfg = reference_config();
    cfg.K = 4;
    cfg.alpha = {0.1, 0.5, 1.0, 1.0};
    CHECK(validation_message(cfg).find("M >= K violated") != std::string::npos);

    cfg = reference_config();
    cfg.alpha[1] = 0.0;
    CHECK(validation_message(cfg).find("alpha_k > 0 violated") != std::string::npos);

    cfg = reference_config();
    cfg.L = 2;
    CHECK(validation_message(cfg) == "L >= M violated: L=2, M=3");

    cfg = reference_config();
    cfg.N = 4;
    CHECK(validation_message(cfg).find("M >= N violated") != std::string::npos);

    cfg = reference_config();
    cfg.pc = -1.0;
    CHECK(validation_message(cfg).find("pc >= 0 violated") != std::string::npos);

    cfg = reference_config();
    cfg.ps = std::nan("");
    CHECK(validation_message(cfg).find("ps >= 0 violated") != std::string::npos);

    cfg = reference_config();
    const double bad[] = {1.0, 0.0, 0.5};
    cfg.R = correlation_from_eigenvalues(bad);
    CHECK(validation_message(cfg).find("R positive definite violated") != std::string::npos);

    cfg = reference_config();
    cfg.R(0, 1) = cplx(0.2, 0.1);
    CHECK(validation_message(cfg).find("R Hermitian violated") != std::string::npos);

    cfg = reference_config();
    cfg.alpha.pop_back();
    CHECK(validation_message(cfg).find("len(alpha) == K violated") != std::string::npos);
}

TEST_CASE("dB conversion") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(40.0) == doctest::Approx(1e4));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("sample_channel sorts columns and keeps user identity") {
    const SystemConfig cfg = reference_config();
    for (std::uint64_t t = 0; t < 200; ++t) {
        Rng rng(3, t), raw(3, t);
        const ChannelRealization ch = sample_channel(cfg, rng);
        const CMatrix unsorted = sample_channel_unsorted(cfg, raw);
        for (std::size_t k = 1; k < cfg.K; ++k) CHECK(ch.column_norms[k - 1] <= ch.column_norms[k]);
        for (std::size_t j = 0; j < cfg.K; ++j)
            for (std::size_t m = 0; m < cfg.M; ++m) CHECK(ch.H(m, j) == unsorted(m, ch.user[j]));
    }
    Rng a(5), b(5);
    CHECK(sample_channel(cfg, a).H == sample_channel(cfg, b).H);
}

TEST_CASE("unsorted channel moments") {
    SystemConfig cfg = reference_config();
    cfg.alpha = {1.0, 1.0, 1.0};
    const std::size_t draws = 10000;
    std::vector<double> power(cfg.K, 0.0);
    std::vector<std::vector<CMatrix>> cross(cfg.K, std::vector<CMatrix>(cfg.K, CMatrix(cfg.M, cfg.M)));
    for (std::size_t t = 0; t < draws; ++t) {
        Rng rng(21, t);
        const CMatrix h = sample_channel_unsorted(cfg, rng);
        for (std::size_t k = 0; k < cfg.K; ++k) {
            for (std::size_t m = 0; m < cfg.M; ++m) power[k] += std::norm(h(m, k));
            for (std::size_t j = 0; j < cfg.K; ++j)
                for (std::size_t a = 0; a < cfg.M; ++a)
                    for (std::size_t b = 0; b < cfg.M; ++b) cross[k][j](a, b) += h(a, k) * std::conj(h(b, j));
        }
    }
    for (std::size_t k = 0; k < cfg.K; ++k) {
        CHECK(power[k] / (draws * cfg.M) == doctest::Approx(1.0).epsilon(0.03));
        for (std::size_t j = 0; j < cfg.K; ++j)
            if (j != k) CHECK(cross[k][j].frobenius_norm() / draws <= 0.05 * std::sqrt(static_cast<double>(cfg.M)));
    }
}

TEST_CASE("target response covariance") {
    SystemConfig cfg = reference_config();
    std::vector<std::vector<cplx>> cols;
    for (std::uint64_t t = 0; t < 10000 / cfg.M + 1; ++t) {
        Rng rng(31, t);
        const TargetResponse g = sample_target_response(cfg, rng);
        CHECK(g.G.rows() == cfg.N);
        CHECK(g.G.cols() == cfg.M);
        for (std::size_t m = 0; m < cfg.M; ++m) cols.push_back(g.G.column(m));
    }
    const oracle::Mat cov = oracle::sample_covariance(cols);
    CHECK(oracle::rel_frobenius_error(cov, testing::to_mat(cfg.R)) < 0.05);
    const std::vector<double> eig = oracle::eigenvalues_by_roots(cov);
    CHECK(eig[0] == doctest::Approx(1.0).epsilon(0.05));
    CHECK(eig[1] == doctest::Approx(0.1).epsilon(0.05));
    CHECK(eig[2] == doctest::Approx(0.05).epsilon(0.05));

    cfg.R = CMatrix::identity(3);
    cols.clear();
    for (std::uint64_t t = 0; t < 4000; ++t) {
        Rng rng(32, t);
        const TargetResponse g = sample_target_response(cfg, rng);
        for (std::size_t m = 0; m < cfg.M; ++m) cols.push_back(g.G.column(m));
    }
    CHECK(oracle::rel_frobenius_error(oracle::sample_covariance(cols), oracle::identity(3)) < 0.05);

    Rng a(9), b(9);
    CHECK(sample_target_response(cfg, a).G == sample_target_response(cfg, b).G);
}

TEST_CASE("sum rate does not depend on column order") {
    const SystemConfig cfg = reference_config();
    for (std::uint64_t t = 0; t < 100; ++t) {
        Rng rng(44, t);
        const ChannelRealization ch = sample_channel(cfg, rng);
        CMatrix permuted(cfg.M, cfg.K);
        for (std::size_t j = 0; j < cfg.K; ++j) permuted.set_column(j, ch.H.column(cfg.K - 1 - j));
        CHECK(std::abs(sum_cr_csic(ch.H, 10.0) - sum_cr_csic(permuted, 10.0)) <= 1e-9);
    }
}

TEST_CASE("SIC order parsing") {
    CHECK(parse_sic_order("C-SIC") == SicOrder::c_sic);
    CHECK(parse_sic_order("s_sic") == SicOrder::s_sic);
    CHECK(to_string(SicOrder::s_sic) == "s-sic");
    CHECK_THROWS_AS(parse_sic_order("fifo"), ConfigError);
}
