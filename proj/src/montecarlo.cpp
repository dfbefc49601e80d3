// SPDX-License-Identifier: Apache-2.0
#include "isac/montecarlo.hpp"

#include <cmath>
#include <optional>

#include "isac/errors.hpp"
#include "isac/sensing.hpp"

namespace isac {

namespace {
constexpr double kZ95 = 1.959963984540054;
}

void Moments::add(double x) {
    const double old_mean = mean();
    ++count;
    sum += x;
    m2 += (x - old_mean) * (x - mean());
}

void Moments::merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(other.count);
    const double delta = other.mean() - mean();
    m2 += other.m2 + delta * delta * na * nb / (na + nb);
    sum += other.sum;
    count += other.count;
}

EstimateResult proportion_estimate(double successes, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw StructuralError("proportion_estimate: trials must be >= 1");
    const double n = static_cast<double>(trials);
    const double p = successes / n;
    const double z2 = kZ95 * kZ95;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = kZ95 * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    EstimateResult r;
    r.point = p;
    r.half_width_95 = half;
    r.trials = trials;
    r.seed = seed;
    r.lower = successes <= 0.0 ? 0.0 : std::max(0.0, centre - half);
    r.upper = successes >= n ? 1.0 : std::min(1.0, centre + half);
    return r;
}

EstimateResult mean_estimate(const Moments& m, std::uint64_t seed) {
    if (m.count == 0) throw StructuralError("mean_estimate: no samples");
    EstimateResult r;
    r.point = m.mean();
    r.half_width_95 = kZ95 * std::sqrt(m.variance() / static_cast<double>(m.count));
    r.trials = m.count;
    r.seed = seed;
    r.lower = r.point - r.half_width_95;
    r.upper = r.point + r.half_width_95;
    return r;
}

std::vector<NamedScheme> standard_schemes(const SystemConfig& cfg, double fdsac_fraction) {
    return {
        {"csic", SumRateScheme::c_sic()},
        {"ssic", SumRateScheme::for_order(cfg, SicOrder::s_sic)},
        {"fdsac", SumRateScheme::fdsac(fdsac_fraction)},
    };
}

namespace {

// Scores every (scheme, power) pair on one channel draw per trial.
class RateKernel {
public:
    RateKernel(const SystemConfig& cfg, std::span<const NamedScheme> schemes, std::span<const double> pc_linear,
               std::optional<double> rate_target)
        : cfg_(cfg), schemes_(schemes), pc_(pc_linear), target_(rate_target) {}

    void operator()(Rng& rng, std::span<double> out) {
        sample_channel_into(cfg_, rng, channel_);
        const CMatrix g = gram(channel_.H);
        std::size_t i = 0;
        for (const auto& s : schemes_)
            for (double pc : pc_) {
                const double r = s.scheme.rate(g, pc);
                out[i++] = target_ ? (r < *target_ ? 1.0 : 0.0) : r;
            }
    }

private:
    const SystemConfig& cfg_;
    std::span<const NamedScheme> schemes_;
    std::span<const double> pc_;
    std::optional<double> target_;
    ChannelRealization channel_;
};

std::vector<Moments> run_rates(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                               std::span<const double> pc_linear, std::optional<double> target, const TrialPlan& plan) {
    if (plan.trials == 0) throw StructuralError("Monte Carlo: trials must be >= 1");
    validate_config(cfg);
    return run_trials(plan, schemes.size() * pc_linear.size(),
                      [&]() { return RateKernel(cfg, schemes, pc_linear, target); });
}

std::vector<double> to_linear(std::span<const double> db) {
    std::vector<double> out;
    out.reserve(db.size());
    for (double v : db) out.push_back(db_to_linear(v));
    return out;
}

}  // namespace

std::vector<OpCurve> estimate_op_curves(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                        std::span<const double> pc_db, double rate_target, const TrialPlan& plan) {
    if (!(rate_target >= 0.0)) throw StructuralError("estimate_op: rate target must be >= 0");
    const std::vector<double> pc = to_linear(pc_db);
    const std::vector<Moments> m = run_rates(cfg, schemes, pc, rate_target, plan);
    std::vector<OpCurve> curves;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        OpCurve c{schemes[s].label, std::vector<double>(pc_db.begin(), pc_db.end()), {}};
        for (std::size_t j = 0; j < pc.size(); ++j) {
            const Moments& mm = m[s * pc.size() + j];
            c.op.push_back(proportion_estimate(mm.sum, mm.count, plan.seed));
        }
        curves.push_back(std::move(c));
    }
    return curves;
}

std::vector<EcrCurve> estimate_ecr_curves(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                          std::span<const double> pc_db, const TrialPlan& plan) {
    const std::vector<double> pc = to_linear(pc_db);
    const std::vector<Moments> m = run_rates(cfg, schemes, pc, std::nullopt, plan);
    std::vector<EcrCurve> curves;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        EcrCurve c{schemes[s].label, std::vector<double>(pc_db.begin(), pc_db.end()), {}};
        for (std::size_t j = 0; j < pc.size(); ++j) c.ecr.push_back(mean_estimate(m[s * pc.size() + j], plan.seed));
        curves.push_back(std::move(c));
    }
    return curves;
}

std::vector<EstimateResult> estimate_ecr_multi(const SystemConfig& cfg, std::span<const NamedScheme> schemes,
                                               const TrialPlan& plan) {
    const double pc[] = {cfg.pc};
    const std::vector<Moments> m = run_rates(cfg, schemes, pc, std::nullopt, plan);
    std::vector<EstimateResult> out;
    for (const auto& mm : m) out.push_back(mean_estimate(mm, plan.seed));
    return out;
}

EstimateResult estimate_op(const SystemConfig& cfg, const SumRateScheme& scheme, double rate_target, const TrialPlan& plan) {
    if (!(rate_target >= 0.0)) throw StructuralError("estimate_op: rate target must be >= 0");
    const NamedScheme named[] = {{"scheme", scheme}};
    const double pc[] = {cfg.pc};
    const std::vector<Moments> m = run_rates(cfg, named, pc, rate_target, plan);
    return proportion_estimate(m[0].sum, m[0].count, plan.seed);
}

EstimateResult estimate_op(const SystemConfig& cfg, double rate_target, std::size_t trials, std::uint64_t seed) {
    return estimate_op(cfg, SumRateScheme::for_order(cfg, cfg.sic_order), rate_target, TrialPlan{trials, seed, 0});
}

EstimateResult estimate_ecr(const SystemConfig& cfg, const SumRateScheme& scheme, const TrialPlan& plan) {
    const NamedScheme named[] = {{"scheme", scheme}};
    const double pc[] = {cfg.pc};
    const std::vector<Moments> m = run_rates(cfg, named, pc, std::nullopt, plan);
    return mean_estimate(m[0], plan.seed);
}

EstimateResult estimate_ecr(const SystemConfig& cfg, std::size_t trials, std::uint64_t seed) {
    return estimate_ecr(cfg, SumRateScheme::for_order(cfg, cfg.sic_order), TrialPlan{trials, seed, 0});
}

double fit_diversity_slope(const OpCurve& curve, IndexWindow window) {
    if (window.last >= curve.op.size() || window.first >= window.last)
        throw StructuralError("fit_diversity_slope: window must hold at least 2 points inside the curve");
    const std::size_t n = window.last - window.first + 1;
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs, ys;
    for (std::size_t i = window.first; i <= window.last; ++i) {
        const double op = curve.op[i].point;
        if (!(op > 0.0))
            throw StatisticalError("fit_diversity_slope: zero outage estimate at " + std::to_string(curve.snr_db[i]) +
                                   " dB; increase trials or lower SNR window");
        xs.push_back(curve.snr_db[i] / 10.0);
        ys.push_back(-std::log10(op));
        sx += xs.back();
        sy += ys.back();
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw StructuralError("fit_diversity_slope: SNR grid must not be constant");
    return sxy / sxx;
}

IndexWindow outage_window(const OpCurve& curve, double lo, double hi) {
    IndexWindow best{0, 0};
    std::size_t best_len = 0;
    std::size_t start = 0, len = 0;
    for (std::size_t i = 0; i < curve.op.size(); ++i) {
        const double op = curve.op[i].point;
        if (op >= lo && op <= hi) {
            if (len == 0) start = i;
            ++len;
            if (len > best_len) {
                best_len = len;
                best = {start, i};
            }
        } else {
            len = 0;
        }
    }
    if (best_len < 2) throw StatisticalError("outage_window: fewer than 2 points with outage in range");
    return best;
}

double fit_rate_slope(double rate_lo, double snr_db_lo, double rate_hi, double snr_db_hi) {
    const double dx = std::log2(db_to_linear(snr_db_hi)) - std::log2(db_to_linear(snr_db_lo));
    if (dx == 0.0) throw StructuralError("fit_rate_slope: identical SNR points");
    return (rate_hi - rate_lo) / dx;
}

}  // namespace isac
