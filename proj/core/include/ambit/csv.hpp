#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ambit {

/// Shortest decimal string that round-trips to the exact double value
/// (std::to_chars); integral values keep a trailing ".0" marker off —
/// they print as plain integers.
std::string format_double(double v);

/// Line-oriented CSV emitter with a fixed header; numbers are formatted
/// with format_double so output is byte-stable across runs and thread
/// counts.
class CsvFile {
public:
    CsvFile(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& cells);
    void close();

    static std::string cell(double v) { return format_double(v); }

private:
    std::ofstream out_;
    std::size_t columns_;
};

}  // namespace ambit
