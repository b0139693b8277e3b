#include "fracadapt/csv.hpp"

#include "fracadapt/errors.hpp"

#include <cstdio>
#include <fstream>

namespace fracadapt::csv {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write(const std::string& path, const Metadata& meta, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (const auto& [key, value] : meta) out << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
    if (!out) throw ConfigError("failed writing " + path);
}

}  // namespace fracadapt::csv
