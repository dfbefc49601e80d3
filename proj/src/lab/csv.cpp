// SPDX-License-Identifier: Apache-2.0
#include "isac/lab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "isac/errors.hpp"

namespace isac::lab {

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) throw StructuralError("CsvTable: row width does not match header");
    rows.push_back(std::move(row));
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    return std::nullopt;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void append_field(std::string& out, const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
        out += f;
        return;
    }
    out.push_back('"');
    for (char ch : f) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
}

void append_record(std::string& out, const std::vector<std::string>& rec) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (i) out.push_back(',');
        append_field(out, rec[i]);
    }
    out.push_back('\n');
}

}  // namespace

std::string to_csv_text(const CsvTable& table) {
    std::string out;
    append_record(out, table.header);
    for (const auto& r : table.rows) append_record(out, r);
    return out;
}

CsvTable parse_csv_text(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            rec.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                rec.push_back(std::move(field));
                records.push_back(std::move(rec));
            }
            rec.clear();
            field.clear();
            any = false;
        } else {
            field.push_back(ch);
            any = true;
        }
    }
    if (quoted) throw StructuralError("CSV: unterminated quoted field");
    if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    CsvTable t;
    if (records.empty()) throw StructuralError("CSV: missing header row");
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size())
            throw StructuralError("CSV: row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                                  " fields, header has " + std::to_string(t.header.size()));
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", path, std::make_error_code(std::errc::io_error));
    out << to_csv_text(table);
    if (!out) throw std::filesystem::filesystem_error("write failed", path, std::make_error_code(std::errc::io_error));
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::filesystem::filesystem_error("cannot open for reading", path, std::make_error_code(std::errc::no_such_file_or_directory));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_csv_text(text.str());
}

}  // namespace isac::lab
