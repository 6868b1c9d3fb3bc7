#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dlmg/lindblad.hpp"

namespace dlmg {

// %.15g, with "nan"/"inf" spelled out
std::string format_number(double v);

// Plain CSV: optional '#'-prefixed header lines, one column-name row, rows.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(const std::string& line);
    void comments(const std::vector<std::pair<std::string, std::string>>& kv);
    void header(const std::vector<std::string>& columns);
    // Cells already formatted (strings) or numbers.
    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

private:
    std::ostream& os_;
    std::size_t ncols_ = 0;
};

// t,<column>... using the observer values of the trajectory
void write_trajectory_csv(std::ostream& os, const TrajectoryResult& tr);

}  // namespace dlmg
