#include "nss/textio.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

namespace nss {

std::optional<double> parse_double(const std::string& token) {
    if (token.empty()) return std::nullopt;
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE) return std::nullopt;
    return v;
}

std::optional<int> parse_integral(const std::string& token) {
    auto v = parse_double(token);
    if (!v) return std::nullopt;
    double r = std::round(*v);
    if (*v != r || std::abs(r) > 2147483647.0) return std::nullopt;
    return static_cast<int>(r);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace nss
