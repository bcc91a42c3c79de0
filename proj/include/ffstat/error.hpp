#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ffstat {

enum class ErrorCode {
    NotPrime,
    ReducibleModulus,
    DegreeMismatch,
    InvalidArgument,
    DivisionByZero,
    BothZero,
    ZeroPolynomial,
    NotSquarefree,
    PrecedenceViolation,
    SyntaxError,
    UnknownVariable,
    NegativeExponent,
    ArityMismatch,
    BudgetExceeded,
    PartitionMismatch,
    InvalidGroup,
    ZeroFrequency,
    NotAdmissible,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every library failure is reported as an Error carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error(ErrorCode::SyntaxError, message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace ffstat
