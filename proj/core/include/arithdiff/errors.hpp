#ifndef ARITHDIFF_ERRORS_HPP
#define ARITHDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithdiff
{

// Machine-readable error categories. The CLI reports these as the "code"
// field of its error payload.
enum class ErrorCode {
    domain,              // argument outside the operation's domain
    precision_exhausted, // no guaranteed p-adic digits left
    integrality,         // a division that must be exact was not
    not_invertible,      // non-unit leading coefficient
    reconstruction,      // no rational within the height bound
    order_budget,        // jet order exceeds the ring's budget
    usage                // malformed input / flags
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept
    {
        return code_;
    }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string &what) : Error(ErrorCode::domain, what) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string &what) : Error(ErrorCode::precision_exhausted, what) {}
};

struct IntegralityViolation : Error {
    explicit IntegralityViolation(const std::string &what) : Error(ErrorCode::integrality, what) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string &what) : Error(ErrorCode::not_invertible, what) {}
};

struct ReconstructionFailure : Error {
    explicit ReconstructionFailure(const std::string &what) : Error(ErrorCode::reconstruction, what) {}
};

struct OrderBudgetExceeded : Error {
    explicit OrderBudgetExceeded(const std::string &what) : Error(ErrorCode::order_budget, what) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string &what) : Error(ErrorCode::usage, what) {}
};

} // namespace arithdiff

#endif
