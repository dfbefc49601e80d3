// SPDX-License-Identifier: Apache-2.0
//
// Experiment configuration files. INI-style text with three sections:
//
//   [system]  M, N, K, L, pc_db | pc, ps_db | ps, alpha, r_eigenvalues | r_matrix, sic_order
//   [sweep]   start_db, stop_db, step_db, rate_target, fdsac_alpha, grid_points
//   [run]     trials, seed, workers
//
// Lists are comma separated. r_matrix rows are separated by ';' and entries by ',', each entry
// either a real number or "(re,im)". Unknown keys are rejected.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isac/model.hpp"

namespace isac::lab {

enum class Command { op_curve, ecr_curve, sr_curve, region, asymptotics, table1 };

std::string to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

struct SweepSpec {
    double start_db = 0.0;
    double stop_db = 30.0;
    double step_db = 2.0;
    double rate_target = 5.0;     // bits/s/Hz, outage threshold
    double fdsac_alpha = 0.5;     // communication share of the band for FDSAC curves
    std::size_t grid_points = 21; // p / alpha grid for regions

    std::vector<double> grid_db() const;
};

struct ExperimentSpec {
    Command command = Command::op_curve;
    SystemConfig cfg;
    SweepSpec sweep;
    std::size_t trials = 0;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::filesystem::path out_dir = "out";
};

/// Documented default trial counts; chosen so interval half-widths stay below the checked tolerances.
std::size_t default_trials(Command c);

/// Sweep defaults that reproduce each figure's axis range.
SweepSpec default_sweep(Command c);

/// Parses config text; throws ConfigError with a message naming the offending key.
ExperimentSpec parse_experiment(Command command, const std::string& text);

ExperimentSpec load_experiment(Command command, const std::filesystem::path& path);

/// Canonical config text for a spec (used in manifests); parse_experiment accepts it back.
std::string describe(const ExperimentSpec& spec);

}  // namespace isac::lab
