#pragma once

#include <string>
#include <vector>

namespace amo {

// Shortest round-trip decimal form (<= 17 significant digits); keeps golden
// CSV/JSON artifacts byte-stable.
std::string fmt_double(double x);

// "# amolab <tag> generated=<iso8601>"; the only non-deterministic output line.
std::string timestamp_header(const std::string& tag);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace amo
