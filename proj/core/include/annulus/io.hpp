#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

// Text formatting shared by the CSV writers and the command-line tool.

namespace annulus::io {

/// Shortest "%.<digits>g" rendering; non-finite values print as nan/inf/-inf.
std::string format_real(double value, int digits = 15);

/// Writes one CSV record. Fields are written verbatim (callers pass numbers
/// already formatted and identifiers without commas).
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// Splits one CSV line on commas (no quoting).
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace annulus::io
