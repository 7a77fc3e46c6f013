#include <arithdiff/errors.hpp>

namespace arithdiff
{

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::domain:
            return "domain_error";
        case ErrorCode::precision_exhausted:
            return "precision_exhausted";
        case ErrorCode::integrality:
            return "integrality_violation";
        case ErrorCode::not_invertible:
            return "not_invertible";
        case ErrorCode::reconstruction:
            return "reconstruction_failure";
        case ErrorCode::order_budget:
            return "order_budget_exceeded";
        case ErrorCode::usage:
            return "usage_error";
    }
    return "unknown";
}

} // namespace arithdiff
