// SPDX-License-Identifier: Apache-2.0
//
// Figure and table reproduction. Each command turns an ExperimentSpec into CSV tables, an SVG
// chart and a manifest inside spec.out_dir.
#pragma once
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isac/lab/config.hpp"
#include "isac/lab/csv.hpp"
#include "isac/lab/svg_chart.hpp"

namespace isac::lab {

inline constexpr const char* kToolVersion = "isac-sic-lab 1.0.0";

/// One output table and how to draw it. A missing chart means a text-table SVG.
struct Artifact {
    std::string name;  // file stem
    CsvTable table;
    std::optional<ChartSpec> chart;
};

struct Experiment {
    std::vector<Artifact> artifacts;  // first entry is <command>.csv / <command>.svg
    std::string summary;              // printed to stdout
};

/// Computes every table without touching the filesystem.
Experiment compute(const ExperimentSpec& spec);

/// Writes artifacts plus manifest.txt; returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentSpec& spec, const Experiment& result);

}  // namespace isac::lab
