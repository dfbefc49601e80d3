// SPDX-License-Identifier: Apache-2.0
//
// Sensing rate under both SIC orders. The sensing rate is the mutual information between the
// received block and the target response per slot; with the waveform Gram matrix aligned to
// the eigenbasis of R it reduces to a water-filling problem over the eigenvalues of R.
#pragma once

#include <span>
#include <vector>

#include "isac/matrixkit.hpp"
#include "isac/model.hpp"

namespace isac {

/// Effective noise variance seen by sensing: 1 + pc * sum(alpha) under C-SIC, 1 under S-SIC.
double noise_floor(const SystemConfig& cfg, SicOrder order);

struct WaterFilling {
    double water_level = 0.0;        // mu; active modes satisfy allocation = mu - sigma_sq / lambda
    std::vector<double> allocation;  // same order as the eigenvalues passed in
};

/// Exact water-filling: maximise sum log2(1 + lambda_n s_n / sigma_sq) subject to sum s_n = budget.
/// The active set is found by scanning sigma_sq / lambda_n in ascending order.
WaterFilling waterfill(std::span<const double> eigenvalues, double sigma_sq, double budget);

/// (M / L) * sum_n log2(1 + lambda_n s_n / sigma_sq), in bits/s/Hz.
double sensing_rate(std::span<const double> eigenvalues, std::span<const double> allocation, double sigma_sq,
                    std::size_t M, std::size_t L);

struct Waveform {
    CMatrix S;                      // N x L
    std::vector<double> slot_noise; // rho_l^2 = 1 + |s_l^H R s_l|
};

/// Realises S = U diag(sqrt(allocation)) F, F being the first N rows of the unitary L-point DFT,
/// so that S S^H = U diag(allocation) U^H. `r_eig` is the eigendecomposition of R.
Waveform build_waveform(const HermitianEig& r_eig, std::span<const double> allocation, std::size_t L);

struct SensingDesign {
    double sigma_sq = 1.0;
    double water_level = 0.0;
    std::vector<double> allocation;
    HermitianEig basis;  // eigendecomposition of R
    CMatrix S;
    std::vector<double> slot_noise;
    double rate = 0.0;   // maximum sensing rate, bits/s/Hz
};

/// Optimal waveform and resulting sensing rate for one SIC order at cfg.ps.
SensingDesign design_sensing(const SystemConfig& cfg, SicOrder order);

double max_sensing_rate(const SystemConfig& cfg, SicOrder order);

/// Sensing rate when a fraction `bandwidth_fraction` of the band is given to communications.
/// Zero at fraction 1; equals the S-SIC rate at fraction 0.
double fdsac_sensing_rate(const SystemConfig& cfg, double bandwidth_fraction);

/// rate ~ slope * (log2 ps - offset) as ps grows.
struct SrAsymptote {
    double slope = 0.0;
    double offset = 0.0;

    double at(double ps) const;
};

SrAsymptote sr_asymptote(const SystemConfig& cfg, SicOrder order);

/// High-SNR sensing-rate advantage of S-SIC over C-SIC, (N M / L) log2(1 + pc sum alpha).
double sensing_gap(const SystemConfig& cfg);

}  // namespace isac
