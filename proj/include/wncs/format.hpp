#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace wncs {

// Shortest round-trip decimal form; "inf" for unbounded values. Stable
// across runs, so CSV output is byte-reproducible.
inline std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace wncs
