// SPDX-License-Identifier: Apache-2.0
#include "isac/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "isac/errors.hpp"

namespace isac {

double noise_floor(const SystemConfig& cfg, SicOrder order) {
    if (order == SicOrder::s_sic) return 1.0;
    const double total = std::accumulate(cfg.alpha.begin(), cfg.alpha.end(), 0.0);
    return 1.0 + cfg.pc * total;
}

WaterFilling waterfill(std::span<const double> eigenvalues, double sigma_sq, double budget) {
    if (!(budget >= 0.0)) throw StructuralError("waterfill: budget must be >= 0");
    if (!(sigma_sq > 0.0)) throw StructuralError("waterfill: noise variance must be > 0");
    const std::size_t n = eigenvalues.size();
    if (n == 0) throw StructuralError("waterfill: no eigenvalues");
    for (double lambda : eigenvalues)
        if (!(lambda > 0.0)) throw StructuralError("waterfill: eigenvalues must be > 0");

    // floor_n = sigma_sq / lambda_n is the level a mode must exceed to receive power
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> floor(n);
    for (std::size_t i = 0; i < n; ++i) floor[i] = sigma_sq / eigenvalues[i];
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return floor[a] < floor[b]; });

    double level = floor[order[0]];
    double cumulative = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        cumulative += floor[order[k]];
        const double mu = (budget + cumulative) / static_cast<double>(k + 1);
        if (mu <= floor[order[k]]) break;
        level = mu;
        if (k + 1 < n && mu <= floor[order[k + 1]]) break;
    }

    WaterFilling out;
    out.water_level = level;
    out.allocation.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.allocation[i] = std::max(0.0, level - floor[i]);
    return out;
}

double sensing_rate(std::span<const double> eigenvalues, std::span<const double> allocation, double sigma_sq,
                    std::size_t M, std::size_t L) {
    if (eigenvalues.size() != allocation.size()) throw StructuralError("sensing_rate: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) acc += std::log2(1.0 + eigenvalues[i] * allocation[i] / sigma_sq);
    return static_cast<double>(M) / static_cast<double>(L) * acc;
}

Waveform build_waveform(const HermitianEig& r_eig, std::span<const double> allocation, std::size_t L) {
    const std::size_t N = r_eig.values.size();
    if (allocation.size() != N) throw StructuralError("build_waveform: allocation length must equal N");
    if (L < N) throw StructuralError("build_waveform: L >= N violated");
    for (double a : allocation)
        if (!(a >= 0.0)) throw StructuralError("build_waveform: allocation must be nonnegative");

    CMatrix spread(N, L);
    const double unit = 1.0 / std::sqrt(static_cast<double>(L));
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t l = 0; l < L; ++l) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((n * l) % L) / static_cast<double>(L);
            spread(n, l) = std::polar(unit, phase);
        }

    CMatrix shaped = r_eig.vectors;
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t n = 0; n < N; ++n) shaped(r, n) *= std::sqrt(allocation[n]);

    Waveform out;
    out.S = shaped * spread;

    CMatrix r = CMatrix(N, N);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b)
                r(a, b) += r_eig.values[j] * r_eig.vectors(a, j) * std::conj(r_eig.vectors(b, j));

    out.slot_noise.resize(L);
    for (std::size_t l = 0; l < L; ++l) {
        cplx q = 0.0;
        for (std::size_t a = 0; a < N; ++a)
            for (std::size_t b = 0; b < N; ++b) q += std::conj(out.S(a, l)) * r(a, b) * out.S(b, l);
        out.slot_noise[l] = 1.0 + std::abs(q);
    }
    return out;
}

SensingDesign design_sensing(const SystemConfig& cfg, SicOrder order) {
    SensingDesign d;
    d.sigma_sq = noise_floor(cfg, order);
    d.basis = hermitian_eig(cfg.R);
    const double budget = static_cast<double>(cfg.L) * cfg.ps;
    WaterFilling wf = waterfill(d.basis.values, d.sigma_sq, budget);
    d.water_level = wf.water_level;
    d.allocation = std::move(wf.allocation);
    Waveform w = build_waveform(d.basis, d.allocation, cfg.L);
    d.S = std::move(w.S);
    d.slot_noise = std::move(w.slot_noise);
    d.rate = sensing_rate(d.basis.values, d.allocation, d.sigma_sq, cfg.M, cfg.L);
    return d;
}

double max_sensing_rate(const SystemConfig& cfg, SicOrder order) {
    const HermitianEig eig = hermitian_eig(cfg.R);
    const double sigma_sq = noise_floor(cfg, order);
    const WaterFilling wf = waterfill(eig.values, sigma_sq, static_cast<double>(cfg.L) * cfg.ps);
    return sensing_rate(eig.values, wf.allocation, sigma_sq, cfg.M, cfg.L);
}

double fdsac_sensing_rate(const SystemConfig& cfg, double bandwidth_fraction) {
    if (!(bandwidth_fraction >= 0.0 && bandwidth_fraction <= 1.0))
        throw StructuralError("fdsac_sensing_rate: bandwidth fraction must lie in [0, 1]");
    const double share = 1.0 - bandwidth_fraction;
    if (share == 0.0) return 0.0;
    const HermitianEig eig = hermitian_eig(cfg.R);
    // the sensing band sees unit noise over a 1/share-times narrower bandwidth
    const WaterFilling wf = waterfill(eig.values, share, static_cast<double>(cfg.L) * cfg.ps);
    return share * sensing_rate(eig.values, wf.allocation, share, cfg.M, cfg.L);
}

double SrAsymptote::at(double ps) const { return slope * (std::log2(ps) - offset); }

SrAsymptote sr_asymptote(const SystemConfig& cfg, SicOrder order) {
    const HermitianEig eig = hermitian_eig(cfg.R);
    const double sigma_sq = noise_floor(cfg, order);
    const double N = static_cast<double>(cfg.N);
    const double L = static_cast<double>(cfg.L);
    double offset = 0.0;
    for (double lambda : eig.values) offset += std::log2(N * sigma_sq / (L * lambda));
    return SrAsymptote{N * static_cast<double>(cfg.M) / L, offset / N};
}

double sensing_gap(const SystemConfig& cfg) {
    const double slope = static_cast<double>(cfg.N * cfg.M) / static_cast<double>(cfg.L);
    return slope * std::log2(noise_floor(cfg, SicOrder::c_sic));
}

}  // namespace isac
