// SPDX-License-Identifier: Apache-2.0
#include "isac/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isac/errors.hpp"
#include "isac/sensing.hpp"

namespace isac {

std::string to_string(RegionKind kind) { return kind == RegionKind::isac ? "isac" : "fdsac"; }

namespace {

void require_unit_grid(std::span<const double> grid, const char* who) {
    if (grid.empty()) throw StructuralError(std::string(who) + ": grid is empty");
    for (double v : grid)
        if (!(v >= 0.0 && v <= 1.0)) throw StructuralError(std::string(who) + ": grid values must lie in [0, 1]");
}

}  // namespace

IsacCorners isac_corners(const SystemConfig& cfg, const TrialPlan& plan) {
    validate_config(cfg);
    const std::vector<NamedScheme> schemes = {
        {"ssic", SumRateScheme::for_order(cfg, SicOrder::s_sic)},
        {"csic", SumRateScheme::c_sic()},
    };
    const std::vector<EstimateResult> ecr = estimate_ecr_multi(cfg, schemes, plan);
    IsacCorners c;
    c.s_sic = {max_sensing_rate(cfg, SicOrder::s_sic), ecr[0].point, ecr[0].half_width_95};
    c.c_sic = {max_sensing_rate(cfg, SicOrder::c_sic), ecr[1].point, ecr[1].half_width_95};
    return c;
}

RegionBoundary isac_boundary(const IsacCorners& corners, std::span<const double> p_grid) {
    require_unit_grid(p_grid, "isac_boundary");
    RegionBoundary b;
    b.kind = RegionKind::isac;
    for (double p : p_grid) {
        RatePoint pt;
        if (p == 0.0) {
            pt = corners.c_sic;
        } else if (p == 1.0) {
            pt = corners.s_sic;
        } else {
            pt.sr = p * corners.s_sic.sr + (1.0 - p) * corners.c_sic.sr;
            pt.cr = p * corners.s_sic.cr + (1.0 - p) * corners.c_sic.cr;
            pt.cr_ci95 = p * corners.s_sic.cr_ci95 + (1.0 - p) * corners.c_sic.cr_ci95;
        }
        b.params.push_back(p);
        b.points.push_back(pt);
    }
    return b;
}

RegionBoundary isac_boundary(const SystemConfig& cfg, std::span<const double> p_grid, const TrialPlan& plan) {
    require_unit_grid(p_grid, "isac_boundary");
    return isac_boundary(isac_corners(cfg, plan), p_grid);
}

RegionBoundary fdsac_boundary(const SystemConfig& cfg, std::span<const double> alpha_grid, const TrialPlan& plan) {
    require_unit_grid(alpha_grid, "fdsac_boundary");
    validate_config(cfg);
    std::vector<NamedScheme> schemes;
    for (double a : alpha_grid) schemes.push_back({"fdsac", SumRateScheme::fdsac(a)});

    const std::vector<EstimateResult> ecr = estimate_ecr_multi(cfg, schemes, plan);

    RegionBoundary b;
    b.kind = RegionKind::fdsac;
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
        RatePoint pt;
        pt.sr = fdsac_sensing_rate(cfg, alpha_grid[i]);
        pt.cr = ecr[i].point;
        pt.cr_ci95 = ecr[i].half_width_95;
        b.params.push_back(alpha_grid[i]);
        b.points.push_back(pt);
    }
    return b;
}

namespace {

// Largest communication rate the outer region offers at sensing rate x.
double frontier_at(std::span<const RatePoint> sorted, double x) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].sr >= x) best = std::max(best, sorted[i].cr);
        if (i + 1 < sorted.size()) {
            const RatePoint& a = sorted[i];
            const RatePoint& b = sorted[i + 1];
            if (a.sr <= x && x <= b.sr && b.sr > a.sr) {
                const double t = (x - a.sr) / (b.sr - a.sr);
                best = std::max(best, a.cr + t * (b.cr - a.cr));
            }
        }
    }
    return best;
}

}  // namespace

Containment containment_check(const RegionBoundary& inner, const RegionBoundary& outer) {
    if (inner.points.empty() || outer.points.empty()) throw StructuralError("containment_check: empty boundary");
    std::vector<RatePoint> sorted = outer.points;
    std::stable_sort(sorted.begin(), sorted.end(), [](const RatePoint& a, const RatePoint& b) { return a.sr < b.sr; });

    double max_sr = 0.0, max_cr = 0.0;
    for (const auto& p : sorted) {
        max_sr = std::max(max_sr, p.sr);
        max_cr = std::max(max_cr, p.cr);
    }
    Containment out;
    out.scale = std::hypot(max_sr, max_cr);
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& p : inner.points) {
        const double margin = p.sr > max_sr ? max_sr - p.sr : frontier_at(sorted, p.sr) - p.cr;
        out.worst_margin = std::min(out.worst_margin, margin);
    }
    out.contained = out.worst_margin >= -1e-6 * out.scale;
    return out;
}

bool strictly_dominates(const RatePoint& a, const RatePoint& b) {
    return a.sr >= b.sr && a.cr >= b.cr && (a.sr > b.sr || a.cr > b.cr);
}

std::vector<double> unit_grid(std::size_t points) {
    if (points < 2) throw StructuralError("unit_grid: need at least 2 points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    g.back() = 1.0;
    return g;
}

}  // namespace isac
