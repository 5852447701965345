#pragma once

#include <iosfwd>
#include <string>

#include "slpkit/simkit.hpp"

namespace slp {

inline constexpr const char* kVersion = "0.1.0";

/// RFC-4180 CSV: header row from the report's column list, one row per grid
/// point, doubles rendered with 17 significant digits so identical runs
/// produce byte-identical files.
void write_csv(const MetricsReport& report, std::ostream& os);

/// JSON document mirroring the CSV fields plus the report metadata.
/// NaN fields are emitted as null.
void write_json(const MetricsReport& report, std::ostream& os);

/// Single CSV field with RFC-4180 quoting.
std::string csv_escape(const std::string& field);

/// Shortest 17-significant-digit decimal rendering of a double.
std::string format_double(double value);

}  // namespace slp
