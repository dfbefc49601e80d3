// SPDX-License-Identifier: Apache-2.0
#include "isac/lab/experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "isac/comms.hpp"
#include "isac/montecarlo.hpp"
#include "isac/region.hpp"
#include "isac/sensing.hpp"

namespace isac::lab {

namespace {

std::string f(double v) { return format_number(v); }

TrialPlan plan_of(const ExperimentSpec& spec) { return TrialPlan{spec.trials, spec.seed, spec.workers}; }

double fdsac_ecr_asymptote(const SystemConfig& cfg, double frac, double pc) {
    if (frac <= 0.0) return 0.0;
    const EcrAsymptote c = ecr_asymptote(cfg, SicOrder::c_sic);
    return frac * c.slope * (std::log2(pc) - c.offset - std::log2(frac));
}

Experiment op_curve(const ExperimentSpec& spec) {
    const std::vector<double> grid = spec.sweep.grid_db();
    const auto schemes = standard_schemes(spec.cfg, spec.sweep.fdsac_alpha);
    const auto curves = estimate_op_curves(spec.cfg, schemes, grid, spec.sweep.rate_target, plan_of(spec));

    CsvTable t;
    t.header = {"pc_db"};
    for (const auto& c : curves) t.header.push_back("op_" + c.label);
    for (const auto& c : curves) t.header.push_back("op_" + c.label + "_ci95");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        std::vector<std::string> row{f(grid[j])};
        for (const auto& c : curves) row.push_back(f(c.op[j].point));
        for (const auto& c : curves) row.push_back(f(c.op[j].half_width_95));
        t.add_row(std::move(row));
    }
    ChartSpec chart{"Outage probability, R = " + f(spec.sweep.rate_target) + " bit/s/Hz", "pc_db",
                    {"op_csic", "op_ssic", "op_fdsac"}, "pc (dB)", "outage probability", true, std::nullopt};
    return {{{"op-curve", std::move(t), std::move(chart)}}, ""};
}

Experiment ecr_curve(const ExperimentSpec& spec) {
    const SystemConfig& cfg = spec.cfg;
    const std::vector<double> grid = spec.sweep.grid_db();
    const auto schemes = standard_schemes(cfg, spec.sweep.fdsac_alpha);
    const auto curves = estimate_ecr_curves(cfg, schemes, grid, plan_of(spec));
    const EcrAsymptote ac = ecr_asymptote(cfg, SicOrder::c_sic);
    const EcrAsymptote as = ecr_asymptote(cfg, SicOrder::s_sic, schemes[1].scheme.slot_noise());

    CsvTable t;
    t.header = {"pc_db"};
    for (const auto& c : curves) t.header.push_back("ecr_" + c.label + "_bits");
    t.header.insert(t.header.end(), {"asym_csic_bits", "asym_ssic_bits", "asym_fdsac_bits"});
    for (const auto& c : curves) t.header.push_back("ecr_" + c.label + "_ci95");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double pc = db_to_linear(grid[j]);
        std::vector<std::string> row{f(grid[j])};
        for (const auto& c : curves) row.push_back(f(c.ecr[j].point));
        row.push_back(f(ac.at(pc)));
        row.push_back(f(as.at(pc)));
        row.push_back(f(fdsac_ecr_asymptote(cfg, spec.sweep.fdsac_alpha, pc)));
        for (const auto& c : curves) row.push_back(f(c.ecr[j].half_width_95));
        t.add_row(std::move(row));
    }
    ChartSpec chart{"Ergodic sum rate", "pc_db",
                    {"ecr_csic_bits", "ecr_ssic_bits", "ecr_fdsac_bits", "asym_csic_bits", "asym_ssic_bits", "asym_fdsac_bits"},
                    "pc (dB)", "ergodic sum rate (bit/s/Hz)", false, std::nullopt};
    return {{{"ecr-curve", std::move(t), std::move(chart)}}, ""};
}

Experiment sr_curve(const ExperimentSpec& spec) {
    SystemConfig cfg = spec.cfg;
    CsvTable t;
    t.header = {"ps_db", "sr_csic_bits", "sr_ssic_bits", "sr_fdsac_bits", "asym_csic_bits", "asym_ssic_bits"};
    for (double db : spec.sweep.grid_db()) {
        cfg.ps = db_to_linear(db);
        t.add_row({f(db), f(max_sensing_rate(cfg, SicOrder::c_sic)), f(max_sensing_rate(cfg, SicOrder::s_sic)),
                   f(fdsac_sensing_rate(cfg, spec.sweep.fdsac_alpha)), f(sr_asymptote(cfg, SicOrder::c_sic).at(cfg.ps)),
                   f(sr_asymptote(cfg, SicOrder::s_sic).at(cfg.ps))});
    }
    ChartSpec chart{"Sensing rate", "ps_db", {"sr_csic_bits", "sr_ssic_bits", "sr_fdsac_bits", "asym_csic_bits", "asym_ssic_bits"},
                    "ps (dB)", "sensing rate (bit/s/Hz)", false, std::nullopt};
    return {{{"sr-curve", std::move(t), std::move(chart)}}, ""};
}

CsvTable boundary_table(const RegionBoundary& b, bool with_kind) {
    CsvTable t;
    if (with_kind) t.header.push_back("boundary");
    t.header.insert(t.header.end(), {"param", "sr_bits", "cr_bits", "cr_ci95"});
    for (std::size_t i = 0; i < b.points.size(); ++i) {
        std::vector<std::string> row;
        if (with_kind) row.push_back(to_string(b.kind));
        row.insert(row.end(), {f(b.params[i]), f(b.points[i].sr), f(b.points[i].cr), f(b.points[i].cr_ci95)});
        t.add_row(std::move(row));
    }
    return t;
}

Experiment region(const ExperimentSpec& spec) {
    const std::vector<double> grid = unit_grid(spec.sweep.grid_points);
    const RegionBoundary isac = isac_boundary(spec.cfg, grid, plan_of(spec));
    const RegionBoundary fdsac = fdsac_boundary(spec.cfg, grid, plan_of(spec));

    CsvTable both = boundary_table(isac, true);
    for (auto& row : boundary_table(fdsac, true).rows) both.add_row(std::move(row));

    const Containment c = containment_check(fdsac, isac);
    const RatePoint& s_corner = isac.points.back();
    const RatePoint& c_corner = isac.points.front();
    const RatePoint& f_sense = fdsac.points.front();
    const RatePoint& f_comm = fdsac.points.back();
    std::ostringstream summary;
    summary << "fdsac within isac: " << (c.contained ? "yes" : "no") << " (worst margin " << f(c.worst_margin)
            << ", tolerance " << f(-1e-6 * c.scale) << ")\n";
    summary << "s-sic corner sr " << f(s_corner.sr) << " vs fdsac sensing-only sr " << f(f_sense.sr) << '\n';
    summary << "c-sic corner cr " << f(c_corner.cr) << " vs fdsac full-band cr " << f(f_comm.cr) << '\n';

    ChartSpec chart{"Rate regions", "sr_bits", {"cr_bits"}, "sensing rate (bit/s/Hz)",
                    "communication rate (bit/s/Hz)", false, std::string("boundary")};
    Experiment e;
    e.artifacts.push_back({"region", std::move(both), std::move(chart)});
    e.artifacts.push_back({"region_isac", boundary_table(isac, false), std::nullopt});
    e.artifacts.push_back({"region_fdsac", boundary_table(fdsac, false), std::nullopt});
    e.summary = summary.str();
    return e;
}

Experiment asymptotics(const ExperimentSpec& spec) {
    const SystemConfig& cfg = spec.cfg;
    const double frac = spec.sweep.fdsac_alpha;
    const SensingDesign ssic = design_sensing(cfg, SicOrder::s_sic);
    const SrAsymptote sc = sr_asymptote(cfg, SicOrder::c_sic);
    const SrAsymptote ss = sr_asymptote(cfg, SicOrder::s_sic);
    const EcrAsymptote ec = ecr_asymptote(cfg, SicOrder::c_sic);
    const EcrAsymptote es = ecr_asymptote(cfg, SicOrder::s_sic, ssic.slot_noise);
    const double mk = static_cast<double>(cfg.M * cfg.K);

    CsvTable t;
    t.header = {"quantity", "value", "unit"};
    t.add_row({"sr_slope", f(sc.slope), "bit/s/Hz per 3 dB"});
    t.add_row({"sr_offset_csic", f(sc.offset), "3 dB"});
    t.add_row({"sr_offset_ssic", f(ss.offset), "3 dB"});
    t.add_row({"sensing_gap", f(sensing_gap(cfg)), "bit/s/Hz"});
    t.add_row({"ecr_slope", f(ec.slope), "bit/s/Hz per 3 dB"});
    t.add_row({"ecr_offset_csic", f(ec.offset), "3 dB"});
    t.add_row({"ecr_offset_ssic", f(es.offset), "3 dB"});
    t.add_row({"comm_gap", f(comm_gap(cfg, ssic.slot_noise)), "bit/s/Hz"});
    t.add_row({"diversity_order", f(mk), "1"});
    t.add_row({"fdsac_ecr_slope", f(frac * ec.slope), "bit/s/Hz per 3 dB"});
    t.add_row({"fdsac_sr_slope", f((1.0 - frac) * sc.slope), "bit/s/Hz per 3 dB"});
    return {{{"asymptotics", std::move(t), std::nullopt}}, ""};
}

Experiment table1(const ExperimentSpec& spec) {
    const SystemConfig& cfg = spec.cfg;
    const double frac = spec.sweep.fdsac_alpha;
    const double mk = static_cast<double>(cfg.M * cfg.K);
    const double k = static_cast<double>(cfg.K);
    const double sr = static_cast<double>(cfg.N * cfg.M) / static_cast<double>(cfg.L);

    CsvTable t;
    t.header = {"system", "diversity_order", "cr_slope", "sr_slope"};
    for (const char* name : {"ISAC (S-SIC)", "ISAC (C-SIC)", "ISAC (Time-Sharing)"}) t.add_row({name, f(mk), f(k), f(sr)});
    t.add_row({"FDSAC", f(mk), f(frac * k), f((1.0 - frac) * sr)});

    std::ostringstream summary;
    for (const auto& row : t.rows) summary << row[0] << ": D = " << row[1] << ", CR slope = " << row[2] << ", SR slope = " << row[3] << '\n';
    return {{{"table1", std::move(t), std::nullopt}}, summary.str()};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
    out << text;
    if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

}  // namespace

Experiment compute(const ExperimentSpec& spec) {
    validate_config(spec.cfg);
    switch (spec.command) {
        case Command::op_curve: return op_curve(spec);
        case Command::ecr_curve: return ecr_curve(spec);
        case Command::sr_curve: return sr_curve(spec);
        case Command::region: return region(spec);
        case Command::asymptotics: return asymptotics(spec);
        case Command::table1: return table1(spec);
    }
    throw StructuralError("unknown command");
}

std::vector<std::filesystem::path> write_outputs(const ExperimentSpec& spec, const Experiment& result) {
    std::filesystem::create_directories(spec.out_dir);
    std::vector<std::filesystem::path> written;
    for (std::size_t i = 0; i < result.artifacts.size(); ++i) {
        const Artifact& a = result.artifacts[i];
        const auto csv = spec.out_dir / (a.name + ".csv");
        write_csv(csv, a.table);
        written.push_back(csv);
        if (i > 0 && !a.chart) continue;
        const auto svg = spec.out_dir / (a.name + ".svg");
        write_text(svg, a.chart ? render_chart_svg(a.table, *a.chart) : render_table_svg(a.table, a.name));
        written.push_back(svg);
    }

    std::ostringstream m;
    m << "tool_version = " << kToolVersion << '\n';
    m << "command = " << to_string(spec.command) << '\n';
    m << "seed = " << spec.seed << '\n';
    m << "trials = " << spec.trials << "\n\n";
    m << describe(spec);
    m << "\n[outputs]\n";
    for (const auto& p : written) m << p.filename().string() << '\n';
    const auto manifest = spec.out_dir / "manifest.txt";
    write_text(manifest, m.str());
    written.push_back(manifest);
    return written;
}

}  // namespace isac::lab
