// SPDX-License-Identifier: Apache-2.0
//
// Uplink sum communication rate with an MMSE-SIC receiver, under both SIC orders and for the
// frequency-division baseline, plus the high-SNR ergodic-rate asymptotes.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "isac/matrixkit.hpp"
#include "isac/model.hpp"

namespace isac {

struct RateSample {
    double sum_cr = 0.0;                 // bits/s/Hz
    std::vector<double> per_user_sinr;   // gamma_k, columns of H in order
    SicOrder order = SicOrder::c_sic;
    std::vector<double> slot_rates;      // S-SIC only
};

/// gamma_k = pc h_k^H (I + pc sum_{i<k} h_i h_i^H)^{-1} h_k. Column K is decoded first.
std::vector<double> mmse_sic_sinrs(const CMatrix& H, double pc);

/// log2 det(I + pc H H^H).
double sum_cr_csic(const CMatrix& H, double pc);

/// Same rate with the per-user SINRs filled in.
RateSample csic_rate_sample(const CMatrix& H, double pc);

/// Slot-averaged rate with the sensing echo treated as noise of variance rho_l^2 in slot l.
RateSample sum_cr_ssic(const CMatrix& H, double pc, std::span<const double> slot_noise);

/// alpha log2 det(I + (pc / alpha) H H^H); zero at alpha = 0.
double fdsac_sum_cr(const CMatrix& H, double pc, double bandwidth_fraction);

/// Sum rate evaluated from the K x K Gram matrix H^H H, so that one channel draw can be scored
/// at many powers and schemes cheaply.
class SumRateScheme {
public:
    enum class Kind { c_sic, s_sic, fdsac };

    static SumRateScheme c_sic();
    static SumRateScheme s_sic(std::vector<double> slot_noise);
    static SumRateScheme fdsac(double bandwidth_fraction);

    /// S-SIC slot noise comes from the S-SIC optimal waveform at cfg.ps.
    static SumRateScheme for_order(const SystemConfig& cfg, SicOrder order);

    Kind kind() const { return kind_; }
    double bandwidth_fraction() const { return fraction_; }
    std::span<const double> slot_noise() const { return slot_noise_; }

    double rate(const CMatrix& gram, double pc) const;

private:
    Kind kind_ = Kind::c_sic;
    double fraction_ = 1.0;
    std::vector<double> slot_noise_;
};

/// rate ~ slope * (log2 pc - offset) as pc grows.
struct EcrAsymptote {
    double slope = 0.0;
    double offset = 0.0;

    double at(double pc) const;
};

/// Digamma at a positive integer: psi(n) = H_{n-1} - Euler's constant.
double digamma_int(std::size_t n);

/// Offset -(1/K) sum_k (log2 alpha_k + psi(M - k + 1) / ln 2), plus (1/L) sum log2 rho_l^2 for S-SIC.
/// `slot_noise` is required for S-SIC and ignored for C-SIC.
EcrAsymptote ecr_asymptote(const SystemConfig& cfg, SicOrder order,
                           std::optional<std::span<const double>> slot_noise = std::nullopt);

/// (K / L) sum_l log2 rho_l^2: the ergodic-rate advantage of C-SIC over S-SIC at high SNR.
double comm_gap(const SystemConfig& cfg, std::span<const double> slot_noise);

}  // namespace isac
