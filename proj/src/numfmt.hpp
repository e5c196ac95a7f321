#pragma once

#include <cstdio>
#include <string>

namespace adscurve::detail {

// Round-trip formatting used by every text output.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace adscurve::detail
