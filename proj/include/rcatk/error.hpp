#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rcatk {

/// Failure categories raised by the library. The CLI maps `InputError`,
/// MalformedDescriptor and InvalidArgument to exit code 2 and every other
/// `DomainError` to exit code 1.
enum class ErrorKind {
    CapExceeded,
    NotInvertible,
    NotReflectionGroup,
    NonIntegral,
    HypothesisViolated,
    MalformedDescriptor,
    IdentityViolation,
    DivisionFailure,
    Overflow,
    MissingMoment,
    TruncationTooLow,
    InvalidArgument,
};

inline std::string_view error_name(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotReflectionGroup: return "NotReflectionGroup";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::MalformedDescriptor: return "MalformedDescriptor";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::DivisionFailure: return "DivisionFailure";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::MissingMoment: return "MissingMoment";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class DomainError : public std::runtime_error {
public:
    DomainError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view name() const noexcept { return error_name(kind_); }

private:
    ErrorKind kind_;
};

/// Malformed textual input (group files, literals, descriptors, flags).
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace rcatk
