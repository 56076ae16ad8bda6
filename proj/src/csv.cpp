#include "twistphase/csv.hpp"

#include <cstdio>

#include "twistphase/errors.hpp"

namespace twistphase {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header)
    : columns_(header.size()) {
    add_row(header);
}

void CsvBuilder::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) {
        throw invalid_input("CsvBuilder: row width does not match header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) text_ += ',';
        text_ += cells[i];
    }
    text_ += '\n';
}

void CsvBuilder::add_numeric_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_row(cells);
}

}  // namespace twistphase
