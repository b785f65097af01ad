#include "hopf/util.hpp"

#include <cstdio>

namespace hopf::io {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : ncols_(header.size()) {
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i)
        std::fprintf(f_, "%s%s", header[i].c_str(), i + 1 < header.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        std::fprintf(f_, "%s%s", fmt17(values[i]).c_str(), i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::vector<std::string>& fields) {
    if (fields.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < fields.size(); ++i)
        std::fprintf(f_, "%s%s", fields[i].c_str(), i + 1 < fields.size() ? "," : "\n");
}

} // namespace hopf::io
