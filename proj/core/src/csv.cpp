#include "ambit/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ambit {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvFile::CsvFile(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), columns_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open CSV output file: " + path);
    row(header);
}

void CsvFile::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw std::runtime_error("CSV row has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void CsvFile::close() { out_.close(); }

}  // namespace ambit
