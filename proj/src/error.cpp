#include "xxz/error.hpp"

namespace xxz {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::degenerate_substance: return "degenerate_substance";
        case ErrorCode::non_unique_steady_state: return "non_unique_steady_state";
        case ErrorCode::closed_form_inapplicable: return "closed_form_inapplicable";
        case ErrorCode::stability_guard: return "stability_guard";
        case ErrorCode::config_error: return "config_error";
    }
    return "unknown";
}

}  // namespace xxz
