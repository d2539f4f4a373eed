#include "xxz/format.hpp"

#include <cmath>
#include <cstdio>

namespace xxz {

std::string format_number(double v) {
    if (v == 0.0) return "0";
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

}  // namespace xxz
