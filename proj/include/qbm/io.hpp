#pragma once

#include <iosfwd>
#include <string>

#include "qbm/series.hpp"

namespace qbm {

/// 17 significant digits, reads back bit-exactly.
std::string format_value(double x);

/// `# key=value` header lines, then `t,msd,route,fallback` and one row per
/// point. LF line endings.
void write_csv(std::ostream& os, const MsdSeries& series);
std::string to_csv(const MsdSeries& series);

/// Throws ConfigError on malformed input.
MsdSeries parse_csv(std::istream& is);
MsdSeries parse_csv_string(const std::string& text);

/// {"params": {...}, "route": "...", "series": [{"t", "msd", "fallback"}]}
std::string to_json(const MsdSeries& series);
MsdSeries parse_json(const std::string& text);

enum class Format { csv, json };
Format parse_format(const std::string& name);

/// Writes to `path` in the given format; "-" means standard output.
void write_series(const std::string& path, Format format, const MsdSeries& series);

}  // namespace qbm
