// SPDX-License-Identifier: Apache-2.0
#include "isac/comms.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "isac/errors.hpp"
#include "isac/sensing.hpp"

namespace isac {

namespace {

void require_power(double pc) {
    if (!(pc >= 0.0)) throw StructuralError("communication power must be >= 0");
}

}  // namespace

std::vector<double> mmse_sic_sinrs(const CMatrix& H, double pc) {
    require_power(pc);
    const std::size_t M = H.rows(), K = H.cols();
    if (K > M) throw StructuralError("mmse_sic_sinrs: H must have at least as many rows as columns");
    std::vector<double> sinr(K, 0.0);
    if (pc == 0.0) return sinr;
    CMatrix interference = CMatrix::identity(M);
    for (std::size_t k = 0; k < K; ++k) {
        const std::vector<cplx> hk = H.column(k);
        sinr[k] = pc * inverse_quadratic_form(interference, hk);
        for (std::size_t a = 0; a < M; ++a)
            for (std::size_t b = 0; b < M; ++b) interference(a, b) += pc * hk[a] * std::conj(hk[b]);
    }
    return sinr;
}

double sum_cr_csic(const CMatrix& H, double pc) {
    require_power(pc);
    if (H.cols() > H.rows()) throw StructuralError("sum_cr_csic: H must have at least as many rows as columns");
    return log2det_identity_plus(gram(H), pc);
}

RateSample csic_rate_sample(const CMatrix& H, double pc) {
    RateSample s;
    s.order = SicOrder::c_sic;
    s.per_user_sinr = mmse_sic_sinrs(H, pc);
    s.sum_cr = sum_cr_csic(H, pc);
    return s;
}

RateSample sum_cr_ssic(const CMatrix& H, double pc, std::span<const double> slot_noise) {
    require_power(pc);
    if (slot_noise.empty()) throw StructuralError("sum_cr_ssic: slot noise vector is empty");
    for (double rho : slot_noise)
        if (!(rho >= 1.0)) throw StructuralError("sum_cr_ssic: slot noise rho_l^2 must be >= 1");
    const CMatrix g = gram(H);
    RateSample s;
    s.order = SicOrder::s_sic;
    s.slot_rates.reserve(slot_noise.size());
    double acc = 0.0;
    for (double rho : slot_noise) {
        s.slot_rates.push_back(log2det_identity_plus(g, pc / rho));
        acc += s.slot_rates.back();
    }
    s.sum_cr = acc / static_cast<double>(slot_noise.size());
    // per-user SINRs are reported for the mean slot noise level
    const double mean_rho = std::accumulate(slot_noise.begin(), slot_noise.end(), 0.0) / static_cast<double>(slot_noise.size());
    s.per_user_sinr = mmse_sic_sinrs(H, pc / mean_rho);
    return s;
}

double fdsac_sum_cr(const CMatrix& H, double pc, double bandwidth_fraction) {
    require_power(pc);
    if (!(bandwidth_fraction >= 0.0 && bandwidth_fraction <= 1.0))
        throw StructuralError("fdsac_sum_cr: bandwidth fraction must lie in [0, 1]");
    if (bandwidth_fraction == 0.0) return 0.0;
    return bandwidth_fraction * log2det_identity_plus(gram(H), pc / bandwidth_fraction);
}

SumRateScheme SumRateScheme::c_sic() { return SumRateScheme{}; }

SumRateScheme SumRateScheme::s_sic(std::vector<double> slot_noise) {
    for (double rho : slot_noise)
        if (!(rho >= 1.0)) throw StructuralError("SumRateScheme: slot noise rho_l^2 must be >= 1");
    if (slot_noise.empty()) throw StructuralError("SumRateScheme: slot noise vector is empty");
    SumRateScheme s;
    s.kind_ = Kind::s_sic;
    s.slot_noise_ = std::move(slot_noise);
    return s;
}

SumRateScheme SumRateScheme::fdsac(double bandwidth_fraction) {
    if (!(bandwidth_fraction >= 0.0 && bandwidth_fraction <= 1.0))
        throw StructuralError("SumRateScheme: bandwidth fraction must lie in [0, 1]");
    SumRateScheme s;
    s.kind_ = Kind::fdsac;
    s.fraction_ = bandwidth_fraction;
    return s;
}

SumRateScheme SumRateScheme::for_order(const SystemConfig& cfg, SicOrder order) {
    if (order == SicOrder::c_sic) return c_sic();
    return s_sic(design_sensing(cfg, SicOrder::s_sic).slot_noise);
}

double SumRateScheme::rate(const CMatrix& g, double pc) const {
    switch (kind_) {
        case Kind::c_sic:
            return log2det_identity_plus(g, pc);
        case Kind::s_sic: {
            double acc = 0.0;
            for (double rho : slot_noise_) acc += log2det_identity_plus(g, pc / rho);
            return acc / static_cast<double>(slot_noise_.size());
        }
        case Kind::fdsac:
            if (fraction_ == 0.0) return 0.0;
            return fraction_ * log2det_identity_plus(g, pc / fraction_);
    }
    return 0.0;
}

double EcrAsymptote::at(double pc) const { return slope * (std::log2(pc) - offset); }

double digamma_int(std::size_t n) {
    if (n == 0) throw StructuralError("digamma_int: argument must be a positive integer");
    double harmonic = 0.0;
    for (std::size_t a = 1; a < n; ++a) harmonic += 1.0 / static_cast<double>(a);
    return harmonic - std::numbers::egamma;
}

EcrAsymptote ecr_asymptote(const SystemConfig& cfg, SicOrder order, std::optional<std::span<const double>> slot_noise) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= cfg.K; ++k)
        acc += std::log2(cfg.alpha[k - 1]) + digamma_int(cfg.M - k + 1) / std::numbers::ln2;
    EcrAsymptote out{static_cast<double>(cfg.K), -acc / static_cast<double>(cfg.K)};
    if (order == SicOrder::s_sic) {
        if (!slot_noise || slot_noise->empty()) throw StructuralError("ecr_asymptote: S-SIC requires the slot noise vector");
        double noise = 0.0;
        for (double rho : *slot_noise) noise += std::log2(rho);
        out.offset += noise / static_cast<double>(slot_noise->size());
    }
    return out;
}

double comm_gap(const SystemConfig& cfg, std::span<const double> slot_noise) {
    if (slot_noise.empty()) throw StructuralError("comm_gap: slot noise vector is empty");
    double acc = 0.0;
    for (double rho : slot_noise) acc += std::log2(rho);
    return static_cast<double>(cfg.K) / static_cast<double>(slot_noise.size()) * acc;
}

}  // namespace isac
