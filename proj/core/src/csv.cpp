#include "dlmg/csv.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "dlmg/error.hpp"

namespace dlmg {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << '\n'; }

void CsvWriter::comments(const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) os_ << "# " << k << " = " << v << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    ncols_ = columns.size();
    for (std::size_t k = 0; k < columns.size(); ++k) os_ << (k ? "," : "") << columns[k];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (ncols_ && cells.size() != ncols_) throw DimensionError("CsvWriter: row width differs from header");
    for (std::size_t k = 0; k < cells.size(); ++k) os_ << (k ? "," : "") << cells[k];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_number(v));
    row(s);
}

void write_trajectory_csv(std::ostream& os, const TrajectoryResult& tr) {
    CsvWriter w(os);
    std::vector<std::string> cols{"t"};
    cols.insert(cols.end(), tr.columns.begin(), tr.columns.end());
    w.header(cols);
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
        std::vector<double> r{tr.times[k]};
        if (k < tr.values.size()) r.insert(r.end(), tr.values[k].begin(), tr.values[k].end());
        w.row(r);
    }
}

}  // namespace dlmg
