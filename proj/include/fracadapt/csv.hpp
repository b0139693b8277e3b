#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fracadapt::csv {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Writes `# key: value` lines, the header line and the rows.  Numbers are
/// printed with 17 significant digits so files round-trip exactly.
void write(const std::string& path, const Metadata& meta, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& rows);

std::string format_number(double v);

}  // namespace fracadapt::csv
