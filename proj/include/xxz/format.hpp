#pragma once

#include <optional>
#include <string>

namespace xxz {

/// 12 significant digits, no trailing zeros, "-0" printed as "0".
std::string format_number(double v);

/// Missing values print as an empty field.
std::string format_number(const std::optional<double>& v);

}  // namespace xxz
