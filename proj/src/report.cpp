#include "cjet/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cjet/errors.hpp"

namespace cjet {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

uint64_t fnv1a_hash(const std::string& text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

void CsvTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_.size()) throw ConfigError("csv row arity mismatch");
    rows_.push_back(cells);
}

void CsvTable::add_row_numeric(const std::vector<double>& cells) {
    std::vector<std::string> text;
    text.reserve(cells.size());
    for (double v : cells) text.push_back(format_double(v));
    add_row(text);
}

std::string CsvTable::to_string() const {
    std::ostringstream out;
    for (const auto& c : comments_) out << "# " << c << '\n';
    for (size_t i = 0; i < columns_.size(); ++i)
        out << columns_[i] << (i + 1 < columns_.size() ? "," : "");
    out << '\n';
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << '\n';
    }
    return out.str();
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write csv: " + path);
    f << to_string();
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series) {
    const double W = 820, H = 520;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n"
        << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n"
        << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = xmin + (xmax - xmin) * i / 4.0;
        double y = ymin + (ymax - ymin) * i / 4.0;
        svg << "<text x='" << px(x) << "' y='" << H - mb + 18
            << "' text-anchor='middle' font-size='11'>" << format_double(x) << "</text>\n"
            << "<text x='" << ml - 6 << "' y='" << py(y) + 4
            << "' text-anchor='end' font-size='11'>" << format_double(y) << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        const char* color = palette[ci % 8];
        svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.4' points='";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            svg << px(s.x[i]) << "," << py(s.y[i]) << " ";
        }
        svg << "'/>\n";
        if (!s.label.empty())
            svg << "<text x='" << W - mr - 150 << "' y='" << mt + 16 * ci
                << "' font-size='12' fill='" << color << "'>" << s.label << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write svg: " + path);
    f << svg.str();
}

} // namespace cjet
