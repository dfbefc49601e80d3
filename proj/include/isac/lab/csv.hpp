// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace isac::lab {

/// Header plus string cells; numbers are written with 17 significant digits.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::optional<std::size_t> column(const std::string& name) const;
};

std::string format_number(double v);

/// RFC-4180 text: fields containing ',', '"' or line breaks are quoted, quotes doubled. CRLF-free.
std::string to_csv_text(const CsvTable& table);
CsvTable parse_csv_text(const std::string& text);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace isac::lab
