#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

namespace nss {

// Shortest round-trip decimal for a double (17 significant digits).
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Full-token double parse; rejects trailing junk and empty tokens.
std::optional<double> parse_double(const std::string& token);

// Integer or integral float ("2" or "2.0"); anything else is rejected.
std::optional<int> parse_integral(const std::string& token);

std::vector<std::string> split(const std::string& line, char delim);

}  // namespace nss
