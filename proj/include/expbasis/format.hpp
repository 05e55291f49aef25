#pragma once

#include <cstdio>
#include <string>

namespace expbasis {

/// All numeric CLI/report output goes through this: 12 significant digits,
/// locale-independent, so identical inputs produce byte-identical reports.
inline std::string fmt12(double x) {
    if (x == 0.0) x = 0.0;  // print -0 as 0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline std::string fmt_bool(bool b) { return b ? "true" : "false"; }

} // namespace expbasis
