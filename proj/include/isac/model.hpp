// SPDX-License-Identifier: Apache-2.0
//
// Scenario configuration and statistical sampling of the uplink ISAC signal model:
// Rayleigh user channels h_k ~ CN(0, alpha_k I) and a target response whose columns are
// CN(0, R).
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "isac/errors.hpp"
#include "isac/matrixkit.hpp"
#include "isac/rng.hpp"

namespace isac {

/// Outer-stage SIC order. C-SIC cancels the sensing echo first (favours communications);
/// S-SIC decodes and removes the users first (favours sensing).
enum class SicOrder { c_sic, s_sic };

std::string to_string(SicOrder order);
SicOrder parse_sic_order(const std::string& text);

struct SystemConfig {
    std::size_t M = 0;  // receive antennas
    std::size_t N = 0;  // transmit antennas
    std::size_t K = 0;  // communication users
    std::size_t L = 0;  // pulse length in slots
    double pc = 0.0;    // per-symbol communication power (linear)
    double ps = 0.0;    // per-symbol sensing power budget (linear)
    std::vector<double> alpha;  // K path-loss coefficients
    CMatrix R;                  // N x N sensing correlation
    SicOrder sic_order = SicOrder::c_sic;
};

/// R materialised in the identity basis from its eigenvalues.
CMatrix correlation_from_eigenvalues(std::span<const double> eigenvalues);

/// The three-antenna, three-user, four-slot scenario used throughout the evaluation:
/// alpha = (0.1, 0.5, 1), eig(R) = (1, 0.1, 0.05).
SystemConfig reference_config(double pc = 10.0, double ps = 1.0);

/// Returns cfg unchanged or throws ConfigError naming the first violated constraint.
const SystemConfig& validate_config(const SystemConfig& cfg);

double db_to_linear(double db);
double linear_to_db(double linear);

struct ChannelRealization {
    CMatrix H;                          // M x K, columns ascending by norm
    std::vector<double> column_norms;   // ||h_k||, non-decreasing
    std::vector<std::size_t> user;      // original user index of each column
};

struct TargetResponse {
    CMatrix G;  // N x M
};

ChannelRealization sample_channel(const SystemConfig& cfg, Rng& rng);

/// Reuses the storage in `out`; the Monte Carlo hot path calls this once per trial.
void sample_channel_into(const SystemConfig& cfg, Rng& rng, ChannelRealization& out);

/// Unsorted draw, columns in user order.
CMatrix sample_channel_unsorted(const SystemConfig& cfg, Rng& rng);

TargetResponse sample_target_response(const SystemConfig& cfg, Rng& rng);

/// One row of the aggregate interference-plus-noise seen by sensing under C-SIC,
/// z = sum_k conj(h_{k,m}) x_k + n, with x_k ~ CN(0, pc I_L) and n ~ CN(0, I_L). Length L.
std::vector<cplx> sample_interference_row(const SystemConfig& cfg, Rng& rng);

/// Echo-plus-noise seen by the users under S-SIC in one slot, a = G^H s + n. Length M.
std::vector<cplx> sample_echo_plus_noise(const SystemConfig& cfg, std::span<const cplx> slot_waveform, Rng& rng);

}  // namespace isac
