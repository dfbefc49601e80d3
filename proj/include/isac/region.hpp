// SPDX-License-Identifier: Apache-2.0
//
// Sensing-rate / communication-rate regions. ISAC reaches the segment between its two SIC
// corner points by time sharing; FDSAC traces a curve by splitting the band. Only the upper-right
// boundary is stored: the region is its lower-left closure.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "isac/model.hpp"
#include "isac/montecarlo.hpp"

namespace isac {

struct RatePoint {
    double sr = 0.0;      // bits/s/Hz
    double cr = 0.0;      // ergodic sum rate, bits/s/Hz
    double cr_ci95 = 0.0; // Monte Carlo half-width of cr
};

enum class RegionKind { isac, fdsac };

std::string to_string(RegionKind kind);

struct RegionBoundary {
    RegionKind kind = RegionKind::isac;
    std::vector<double> params;  // time-sharing probability p (ISAC) or bandwidth fraction (FDSAC)
    std::vector<RatePoint> points;
};

struct IsacCorners {
    RatePoint s_sic;  // largest sensing rate
    RatePoint c_sic;  // largest communication rate
};

/// Both corners use the same channel draws.
IsacCorners isac_corners(const SystemConfig& cfg, const TrialPlan& plan);

/// Time sharing: S-SIC with probability p, C-SIC otherwise.
RegionBoundary isac_boundary(const IsacCorners& corners, std::span<const double> p_grid);
RegionBoundary isac_boundary(const SystemConfig& cfg, std::span<const double> p_grid, const TrialPlan& plan);

/// Every bandwidth fraction is evaluated on the same channel draws.
RegionBoundary fdsac_boundary(const SystemConfig& cfg, std::span<const double> alpha_grid, const TrialPlan& plan);

struct Containment {
    bool contained = false;
    double worst_margin = 0.0;  // most negative slack; negative means some inner point escapes
    double scale = 0.0;         // diagonal of the outer region, sets the tolerance
};

/// Tests every inner point against the outer boundary's frontier (the piecewise-linear upper
/// envelope of its points). Margins down to -1e-6 * scale count as contained.
Containment containment_check(const RegionBoundary& inner, const RegionBoundary& outer);

/// a dominates b: no worse in both rates and strictly better in at least one.
bool strictly_dominates(const RatePoint& a, const RatePoint& b);

/// Evenly spaced grid of `points` values covering [0, 1].
std::vector<double> unit_grid(std::size_t points);

}  // namespace isac
