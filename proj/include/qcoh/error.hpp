#pragma once

#include <stdexcept>
#include <string>

namespace qcoh {

enum class ErrorCode {
    NotHermitian,
    DimensionMismatch,
    OutOfRange,
    NotNormalized,
    InvalidCanonicalForm,
    BadRank,
    InvalidState,
    InvalidChannel,
    NotDiagonal,
    NotIncoherentChannel,
    NotStrictlyIncoherent,
    DimensionTooLarge,
    InvalidSpec,
    ParseError,
    NumericalFailure,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse failure with the 1-based line of the offending input.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace qcoh
