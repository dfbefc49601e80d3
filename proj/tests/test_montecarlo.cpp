// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "isac/errors.hpp"
#include "isac/montecarlo.hpp"
#include "isac/sensing.hpp"
#include "oracles.hpp"

using namespace isac;

namespace {

SystemConfig single_link(std::size_t M = 1, double pc = 1.0) {
    SystemConfig cfg;
    cfg.M = M;
    cfg.N = 1;
    cfg.K = 1;
    cfg.L = M;
    cfg.pc = pc;
    cfg.ps = 1.0;
    cfg.alpha = {1.0};
    cfg.R = CMatrix::identity(1);
    return cfg;
}

// Within two 95% half-widths, about four standard errors.
bool inside(const EstimateResult& r, double truth) { return std::abs(r.point - truth) <= 2.0 * r.half_width_95; }

}  // namespace

TEST_CASE("moments merge matches sequential accumulation") {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> n(3.0, 2.0);
    Moments all, left, right;
    for (int i = 0; i < 1000; ++i) {
        const double x = n(gen);
        all.add(x);
        (i < 300 ? left : right).add(x);
    }
    left.merge(right);
    CHECK(left.count == all.count);
    CHECK(left.mean() == doctest::Approx(all.mean()).epsilon(1e-13));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
    Moments empty;
    empty.merge(all);
    CHECK(empty.m2 == all.m2);
}

TEST_CASE("Wilson interval") {
    const EstimateResult zero = proportion_estimate(0.0, 100, 1);
    CHECK(zero.point == 0.0);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == doctest::Approx(0.0370).epsilon(1e-3));
    const EstimateResult half = proportion_estimate(50.0, 100, 1);
    CHECK(half.lower == doctest::Approx(0.4038).epsilon(1e-3));
    CHECK(half.upper == doctest::Approx(0.5962).epsilon(1e-3));
    CHECK(half.half_width_95 >= 0.0);
    CHECK_THROWS_AS(proportion_estimate(0.0, 0, 1), StructuralError);
}

TEST_CASE("outage probability edge cases") {
    const SystemConfig cfg = reference_config(10.0);
    CHECK(estimate_op(cfg, 0.0, 2000, 3).point == 0.0);
    SystemConfig low = cfg;
    low.pc = db_to_linear(-20.0);
    CHECK(estimate_op(low, 5.0, 2000, 3).point == 1.0);
    CHECK_THROWS_AS(estimate_op(cfg, -1.0, 10, 1), StructuralError);
    CHECK_THROWS_AS(estimate_op(cfg, 1.0, 0, 1), StructuralError);
}

TEST_CASE("single-link outage matches the Rayleigh closed form") {
    const double truth = oracle::rayleigh_outage(1, 1.0, 100.0, 1.0);
    CHECK(truth == doctest::Approx(0.00995).epsilon(1e-3));
    const EstimateResult r = estimate_op(single_link(1, 100.0), 1.0, 1000000, 17);
    CHECK(inside(r, truth));
    CHECK(r.trials == 1000000);
    CHECK(r.seed == 17);

    const double truth2 = oracle::rayleigh_outage(2, 1.0, 10.0, 2.0);
    CHECK(inside(estimate_op(single_link(2, 10.0), 2.0, 1000000, 18), truth2));
}

TEST_CASE("ergodic rate edge cases and closed forms") {
    CHECK(estimate_ecr(reference_config(0.0), 1000, 2).point == 0.0);

    const double truth = std::exp(1.0) * oracle::expint_e1(1.0) / std::numbers::ln2;
    CHECK(truth == doctest::Approx(0.86035).epsilon(1e-4));
    const EstimateResult r = estimate_ecr(single_link(1, 1.0), 1000000, 23);
    CHECK(inside(r, truth));
}

TEST_CASE("ergodic rate approaches its high-SNR asymptote") {
    SystemConfig cfg = reference_config(1e4, 1.0);
    const double lcc = ecr_asymptote(cfg, SicOrder::c_sic).offset;
    const double csic = estimate_ecr(cfg, 100000, 41).point;
    CHECK(std::abs(csic - 3.0 * (std::log2(1e4) - lcc)) <= 0.1);
    CHECK(3.0 * (std::log2(1e4) - lcc) == doctest::Approx(36.65).epsilon(1e-3));

    const SumRateScheme ssic = SumRateScheme::for_order(cfg, SicOrder::s_sic);
    const double lcs = ecr_asymptote(cfg, SicOrder::s_sic, ssic.slot_noise()).offset;
    CHECK(std::abs(estimate_ecr(cfg, ssic, {100000, 41, 0}).point - 3.0 * (std::log2(1e4) - lcs)) <= 0.1);
}

TEST_CASE("frequency-division ergodic slope") {
    SystemConfig cfg = reference_config();
    const NamedScheme fd[] = {{"fdsac", SumRateScheme::fdsac(0.5)}};
    const double grid[] = {40.0, 43.0};
    const auto curves = estimate_ecr_curves(cfg, fd, grid, {50000, 5, 0});
    const double slope = fit_rate_slope(curves[0].ecr[0].point, 40.0, curves[0].ecr[1].point, 43.0);
    CHECK(slope == doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("results do not depend on the number of workers") {
    const SystemConfig cfg = reference_config(10.0, 1.0);
    const auto schemes = standard_schemes(cfg, 0.5);
    const double grid[] = {0.0, 6.0, 12.0};
    const auto one = estimate_op_curves(cfg, schemes, grid, 5.0, {5000, 99, 1});
    const auto three = estimate_op_curves(cfg, schemes, grid, 5.0, {5000, 99, 3});
    const auto ecr1 = estimate_ecr_curves(cfg, schemes, grid, {5000, 99, 1});
    const auto ecr4 = estimate_ecr_curves(cfg, schemes, grid, {5000, 99, 4});
    for (std::size_t s = 0; s < schemes.size(); ++s)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(one[s].op[j].point == three[s].op[j].point);
            CHECK(one[s].op[j].half_width_95 == three[s].op[j].half_width_95);
            CHECK(ecr1[s].ecr[j].point == ecr4[s].ecr[j].point);
            CHECK(ecr1[s].ecr[j].half_width_95 == ecr4[s].ecr[j].half_width_95);
        }
}

TEST_CASE("doubling the trials shrinks the interval by about 1/sqrt(2)") {
    const SystemConfig cfg = reference_config(10.0);
    double ratio = 0.0;
    const int repeats = 20;
    for (int s = 0; s < repeats; ++s) {
        const double a = estimate_ecr(cfg, 4000, 1000 + s).half_width_95;
        const double b = estimate_ecr(cfg, 8000, 2000 + s).half_width_95;
        ratio += b / a / repeats;
    }
    CHECK(ratio >= 0.65);
    CHECK(ratio <= 0.75);
}

TEST_CASE("outage is non-increasing in power up to interval overlap") {
    const SystemConfig cfg = reference_config();
    const auto schemes = standard_schemes(cfg, 0.5);
    const std::vector<double> grid = {0, 2, 4, 6, 8, 10, 12, 14};
    for (const auto& c : estimate_op_curves(cfg, schemes, grid, 5.0, {100000, 8, 0}))
        for (std::size_t j = 1; j < c.op.size(); ++j) CHECK(c.op[j].lower <= c.op[j - 1].upper);
}

TEST_CASE("diversity slope on synthetic and simulated curves") {
    OpCurve exact{"synthetic", {10.0, 20.0, 30.0}, {}};
    for (double db : exact.snr_db) exact.op.push_back({1.0 / db_to_linear(db), 0, 1, 0, 0, 0});
    CHECK(std::abs(fit_diversity_slope(exact, {0, 2}) - 1.0) <= 1e-9);
    CHECK_THROWS_AS(fit_diversity_slope(exact, {0, 0}), StructuralError);
    CHECK_THROWS_AS(fit_diversity_slope(exact, {1, 3}), StructuralError);
    exact.op[2].point = 0.0;
    CHECK_THROWS_AS(fit_diversity_slope(exact, {0, 2}), StatisticalError);

    const NamedScheme csic[] = {{"csic", SumRateScheme::c_sic()}};
    const std::vector<double> g1 = {10, 12, 14, 16, 18, 20};
    const auto c1 = estimate_op_curves(single_link(1), csic, g1, 1.0, {1000000, 12, 0});
    CHECK(fit_diversity_slope(c1[0], {0, g1.size() - 1}) == doctest::Approx(1.0).epsilon(0.1));

    const std::vector<double> g2 = {5, 7, 9, 11, 13, 15};
    const auto c2 = estimate_op_curves(single_link(2), csic, g2, 1.0, {1000000, 13, 0});
    CHECK(fit_diversity_slope(c2[0], {0, g2.size() - 1}) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("outage window selection") {
    OpCurve c{"c", {0, 1, 2, 3, 4, 5}, {}};
    for (double p : {0.5, 0.09, 0.2, 0.05, 0.01, 0.001}) c.op.push_back({p, 0, 1, 0, 0, 0});
    const IndexWindow w = outage_window(c, 1e-3, 0.1);
    CHECK(w.first == 3);
    CHECK(w.last == 5);
    CHECK_THROWS_AS(outage_window(c, 0.6, 0.9), StatisticalError);
}

TEST_CASE("rate slope against log2 SNR") {
    CHECK(fit_rate_slope(10.0, 30.0, 10.0 + 3.0 * std::log2(10.0), 40.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(fit_rate_slope(1.0, 5.0, 2.0, 5.0), StructuralError);
}
