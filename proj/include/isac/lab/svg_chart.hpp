// SPDX-License-Identifier: Apache-2.0
//
// Minimal deterministic SVG 1.1 line charts for the experiment CSVs.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isac/errors.hpp"
#include "isac/lab/csv.hpp"

namespace isac::lab {

struct ChartSpec {
    std::string title;
    std::string x_column;
    std::vector<std::string> y_columns;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    // When set, rows are split into one series per distinct value of this column and
    // y_columns[0] supplies y. Each series is drawn as a closed region touching both axes.
    std::optional<std::string> group_column;
};

/// A declared column is missing from the CSV.
class ChartError : public StructuralError {
public:
    explicit ChartError(const std::string& what) : StructuralError(what) {}
};

std::string render_chart_svg(const CsvTable& table, const ChartSpec& spec);

/// Reads `csv_path` and writes the chart to `svg_path`. Same input, same bytes.
void render_chart(const std::filesystem::path& csv_path, const ChartSpec& spec, const std::filesystem::path& svg_path);

/// Renders a CSV as a plain text table (used for the non-curve outputs).
std::string render_table_svg(const CsvTable& table, const std::string& title);

}  // namespace isac::lab
