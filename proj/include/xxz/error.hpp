#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xxz {

enum class ErrorCode {
    invalid_argument = 1,
    degenerate_substance,
    non_unique_steady_state,
    closed_form_inapplicable,
    stability_guard,
    config_error,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every recoverable failure in the engine is reported through this type; the
// C API maps the code onto xxz_status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace xxz
