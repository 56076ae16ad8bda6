#pragma once

#include <string>
#include <vector>

// Deterministic CSV assembly: header + rows, comma separators, LF endings,
// doubles printed with 17 significant digits so output is byte-stable and
// round-trips exactly.
namespace twistphase {

/// %.17g rendering of a double.
std::string format_double(double value);

class CsvBuilder {
  public:
    explicit CsvBuilder(const std::vector<std::string>& header);

    void add_row(const std::vector<std::string>& cells);
    /// Convenience for numeric-only rows.
    void add_numeric_row(const std::vector<double>& values);

    const std::string& str() const { return text_; }

  private:
    std::size_t columns_;
    std::string text_;
};

}  // namespace twistphase
