// SPDX-License-Identifier: Apache-2.0
#include "isac/lab/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace isac::lab {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 170, kTop = 44, kBottom = 64;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> pts;
};

std::string num(double v, int prec = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string label_num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(ch);
        }
    }
    return out;
}

std::optional<double> cell_value(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::size_t require_column(const CsvTable& t, const std::string& name) {
    const auto c = t.column(name);
    if (!c) throw ChartError("missing column '" + name + "'");
    return *c;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;
    std::vector<double> ticks;  // in axis coordinates (log10 when log)
};

Axis make_axis(double lo, double hi, bool log, bool include_zero) {
    Axis a;
    a.log = log;
    if (!(lo <= hi)) {
        lo = log ? -1.0 : 0.0;
        hi = log ? 0.0 : 1.0;
    }
    if (include_zero && !log) lo = std::min(lo, 0.0);
    if (log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
        if (hi <= lo) hi = lo + 1.0;
        a.lo = lo;
        a.hi = hi;
        for (double d = lo; d <= hi + 1e-9; d += 1.0) a.ticks.push_back(d);
        return a;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0) * mag;
    a.lo = std::floor(lo / step + 1e-9) * step;
    a.hi = std::ceil(hi / step - 1e-9) * step;
    for (double t = a.lo; t <= a.hi + step * 1e-6; t += step) a.ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    return a;
}

double px_x(const Axis& a, double v) { return kLeft + (v - a.lo) / (a.hi - a.lo) * (kWidth - kLeft - kRight); }
double px_y(const Axis& a, double v) { return kHeight - kBottom - (v - a.lo) / (a.hi - a.lo) * (kHeight - kTop - kBottom); }

void header(std::ostringstream& os, const std::string& title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title) << "</text>\n";
}

}  // namespace

std::string render_chart_svg(const CsvTable& table, const ChartSpec& spec) {
    if (spec.y_columns.empty()) throw ChartError("chart needs at least one y column");
    const std::size_t xc = require_column(table, spec.x_column);
    std::vector<std::size_t> ycs;
    for (const auto& y : spec.y_columns) ycs.push_back(require_column(table, y));
    const bool grouped = spec.group_column.has_value();

    std::vector<Series> series;
    if (grouped) {
        const std::size_t gc = require_column(table, *spec.group_column);
        std::map<std::string, std::size_t> index;
        for (const auto& row : table.rows) {
            auto [it, fresh] = index.emplace(row[gc], series.size());
            if (fresh) series.push_back({row[gc], {}});
            const auto x = cell_value(row[xc]);
            const auto y = cell_value(row[ycs[0]]);
            if (x && y) series[it->second].pts.emplace_back(*x, *y);
        }
    } else {
        for (std::size_t s = 0; s < ycs.size(); ++s) {
            Series ser{spec.y_columns[s], {}};
            for (const auto& row : table.rows) {
                const auto x = cell_value(row[xc]);
                auto y = cell_value(row[ycs[s]]);
                if (!x || !y) continue;
                if (spec.log_y) {
                    if (!(*y > 0.0)) continue;
                    y = std::log10(*y);
                }
                ser.pts.emplace_back(*x, *y);
            }
            series.push_back(std::move(ser));
        }
    }

    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    const Axis ax = make_axis(xlo, xhi, false, grouped);
    const Axis ay = make_axis(ylo, yhi, spec.log_y, grouped);

    std::ostringstream os;
    header(os, spec.title);
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double t : ax.ticks) os << "<line x1=\"" << num(px_x(ax, t)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px_x(ax, t)) << "\" y2=\"" << num(y1) << "\"/>\n";
    for (double t : ay.ticks) os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(px_y(ay, t)) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(px_y(ay, t)) << "\"/>\n";
    os << "</g>\n";
    os << "<g stroke=\"black\" stroke-width=\"1.2\">\n";
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y0) << "\"/>\n";
    os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1) << "\"/>\n";
    os << "</g>\n";
    os << "<g font-size=\"11\">\n";
    for (double t : ax.ticks)
        os << "<text x=\"" << num(px_x(ax, t)) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">" << label_num(t) << "</text>\n";
    for (double t : ay.ticks) {
        const std::string text = ay.log ? "1e" + label_num(t) : label_num(t);
        os << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(px_y(ay, t) + 4) << "\" text-anchor=\"end\">" << text << "</text>\n";
    }
    os << "</g>\n";
    os << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 20) << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << num((y0 + y1) / 2)
       << ")\">" << escape(spec.y_label + (spec.log_y ? " (log scale)" : "")) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* colour = kPalette[s % std::size(kPalette)];
        const bool dashed = series[s].name.find("asym") != std::string::npos;
        std::ostringstream pts;
        if (grouped) {
            auto sorted = series[s].pts;
            std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            if (!sorted.empty()) {
                pts << num(px_x(ax, 0.0)) << ',' << num(px_y(ay, 0.0)) << ' ';
                pts << num(px_x(ax, 0.0)) << ',' << num(px_y(ay, sorted.front().second)) << ' ';
                for (const auto& [x, y] : sorted) pts << num(px_x(ax, x)) << ',' << num(px_y(ay, y)) << ' ';
                pts << num(px_x(ax, sorted.back().first)) << ',' << num(px_y(ay, 0.0));
            }
            os << "<polygon fill=\"" << colour << "\" fill-opacity=\"0.15\" stroke=\"" << colour
               << "\" stroke-width=\"2\" points=\"" << pts.str() << "\"/>\n";
        } else {
            for (std::size_t i = 0; i < series[s].pts.size(); ++i)
                pts << (i ? " " : "") << num(px_x(ax, series[s].pts[i].first)) << ',' << num(px_y(ay, series[s].pts[i].second));
            os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\""
               << (dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
        }
        const double ly = kTop + 10 + 20.0 * static_cast<double>(s);
        os << "<line x1=\"" << num(x1 + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(x1 + 36) << "\" y2=\"" << num(ly)
           << "\" stroke=\"" << colour << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        os << "<text x=\"" << num(x1 + 42) << "\" y=\"" << num(ly + 4) << "\">" << escape(series[s].name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void render_chart(const std::filesystem::path& csv_path, const ChartSpec& spec, const std::filesystem::path& svg_path) {
    const CsvTable table = read_csv(csv_path);
    const std::string svg = render_chart_svg(table, spec);
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw std::filesystem::filesystem_error("cannot open for writing", svg_path, std::make_error_code(std::errc::io_error));
    out << svg;
}

std::string render_table_svg(const CsvTable& table, const std::string& title) {
    std::ostringstream os;
    header(os, title);
    const double col_w = (kWidth - 40) / static_cast<double>(std::max<std::size_t>(table.header.size(), 1));
    auto row_out = [&](const std::vector<std::string>& cells, double y, bool bold) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            os << "<text x=\"" << num(20 + col_w * static_cast<double>(c)) << "\" y=\"" << num(y) << "\""
               << (bold ? " font-weight=\"bold\"" : "") << ">" << escape(cells[c]) << "</text>\n";
    };
    row_out(table.header, 64, true);
    for (std::size_t r = 0; r < table.rows.size(); ++r) row_out(table.rows[r], 64 + 22.0 * static_cast<double>(r + 1), false);
    os << "</svg>\n";
    return os.str();
}

}  // namespace isac::lab
