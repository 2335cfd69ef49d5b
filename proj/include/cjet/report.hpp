#ifndef CJET_REPORT_HPP
#define CJET_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cjet {

/// Shortest decimal that round-trips the exact float64 value.
std::string format_double(double v);

uint64_t fnv1a_hash(const std::string& text);
std::string hash_hex(uint64_t h);

/// Minimal CSV table: header row, optional "# key=value" comment lines first.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_comment(const std::string& line) { comments_.push_back(line); }
    void add_row(const std::vector<std::string>& cells);
    void add_row_numeric(const std::vector<double>& cells);
    std::string to_string() const;
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained polyline plot (axes, ticks, legend); a convenience output,
/// never load-bearing.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series);

} // namespace cjet

#endif
