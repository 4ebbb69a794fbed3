#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace mainpath {

// Shortest decimal form that round-trips the exact double. Keeps text
// outputs byte-stable across platforms and runs.
inline std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// Fixed-point with the given number of decimals (for ratio columns).
inline std::string format_fixed(double value, int decimals) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

}  // namespace mainpath
