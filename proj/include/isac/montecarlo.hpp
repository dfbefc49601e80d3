// SPDX-License-Identifier: Apache-2.0
//
// Reproducible Monte Carlo engine. Trial i draws from Rng(seed, i), trials are grouped in
// fixed-size chunks, and chunk summaries are merged in chunk order, so results are
// bit-identical for any number of workers.
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "isac/comms.hpp"
#include "isac/model.hpp"
#include "isac/rng.hpp"

namespace isac {

struct EstimateResult {
    double point = 0.0;
    double half_width_95 = 0.0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    double lower = 0.0;  // 95% interval bounds
    double upper = 0.0;
};

struct TrialPlan {
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 0;  // 0: hardware concurrency
};

/// Running sum and centred second moment of one output over a block of trials.
struct Moments {
    std::size_t count = 0;
    double sum = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Moments& other);
    double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
    double variance() const { return count < 2 ? 0.0 : m2 / static_cast<double>(count - 1); }
};

inline constexpr std::size_t kTrialChunk = 1024;

/// Runs plan.trials trials. `make_kernel()` is called once per worker and must return a callable
/// `kernel(Rng&, std::span<double> outputs)` filling `outputs` values for one trial.
template <class KernelFactory>
std::vector<Moments> run_trials(const TrialPlan& plan, std::size_t outputs, KernelFactory&& make_kernel) {
    const std::size_t chunks = (plan.trials + kTrialChunk - 1) / kTrialChunk;
    std::vector<Moments> per_chunk(chunks * outputs);
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        auto kernel = make_kernel();
        std::vector<double> values(outputs);
        for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            Moments* slot = per_chunk.data() + c * outputs;
            const std::size_t end = std::min(plan.trials, (c + 1) * kTrialChunk);
            for (std::size_t t = c * kTrialChunk; t < end; ++t) {
                Rng rng(plan.seed, t);
                kernel(rng, std::span<double>(values));
                for (std::size_t o = 0; o < outputs; ++o) slot[o].add(values[o]);
            }
        }
    };

    unsigned workers = plan.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : plan.workers;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chunks, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    std::vector<Moments> total(outputs);
    for (std::size_t c = 0; c < chunks; ++c)
        for (std::size_t o = 0; o < outputs; ++o) total[o].merge(per_chunk[c * outputs + o]);
    return total;
}

/// Wilson score interval for `successes` out of `trials`.
EstimateResult proportion_estimate(double successes, std::size_t trials, std::uint64_t seed);

/// Sample mean with a normal-approximation 95% interval.
EstimateResult mean_estimate(const Moments& m, std::uint64_t seed);

/// A labelled communication scheme for curve estimation.
struct NamedScheme {
    std::string label;
    SumRateScheme scheme;
};

/// C-SIC, S-SIC (slot noise from the S-SIC waveform at cfg.ps) and FDSAC with the given fraction.
std::vector<NamedScheme> standard_schemes(const SystemConfig& cfg, double fdsac_fraction);

struct OpCurve {
    std::string label;
    std::vector<double> snr_db;
    std::vector<EstimateResult> op;
};

struct EcrCurve {
    std::string label;
    std::vector<double> snr_db;
    std::vector<EstimateResult> ecr;
};

/// Outage curves for several schemes over a grid of pc values (dB). Every grid point and scheme
/// is evaluated on the same channel draws.
std::vector<OpCurve> estimate_op_curves(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                        std::span<const double> pc_db, double rate_target, const TrialPlan& plan);

std::vector<EcrCurve> estimate_ecr_curves(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                          std::span<const double> pc_db, const TrialPlan& plan);

/// Ergodic sum rate of several schemes at cfg.pc, all on the same channel draws.
std::vector<EstimateResult> estimate_ecr_multi(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                               const TrialPlan& plan);

/// Pr(sum rate < rate_target) at cfg.pc.
EstimateResult estimate_op(const SystemConfig& cfg, const SumRateScheme& scheme, double rate_target, const TrialPlan& plan);

/// Same, for the scheme implied by cfg.sic_order.
EstimateResult estimate_op(const SystemConfig& cfg, double rate_target, std::size_t trials, std::uint64_t seed);

/// Ergodic sum rate at cfg.pc.
EstimateResult estimate_ecr(const SystemConfig& cfg, const SumRateScheme& scheme, const TrialPlan& plan);

EstimateResult estimate_ecr(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed);

/// Inclusive index range into a curve.
struct IndexWindow {
    std::size_t first = 0;
    std::size_t last = 0;
};

/// Least-squares slope of -log10(OP) against snr_db / 10 over the window: the empirical diversity
/// order. Throws StatisticalError if any outage estimate in the window is zero.
double fit_diversity_slope(const OpCurve& curve, IndexWindow window);

/// Largest contiguous run of points whose outage estimate lies in [lo, hi].
IndexWindow outage_window(const OpCurve& curve, double lo, double hi);

/// Slope of a rate curve between two points against log2 of the linear SNR.
double fit_rate_slope(double rate_lo, double snr_db_lo, double rate_hi, double snr_db_hi);

}  // namespace isac
