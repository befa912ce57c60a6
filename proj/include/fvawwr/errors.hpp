#pragma once

#include <stdexcept>
#include <string>

namespace fvawwr {

enum class ErrorCode {
    NonMonotoneTimes,
    NonPositiveFactor,
    OutOfRange,
    DomainError,
    TimeOrder,
    NotSPD,
    NoRoot,
    PositivityViolation,
    FellerViolation,
    UnknownScenario,
    ParseError,
    GridMismatch,
    ShapeMismatch,
    MissingFixing,
    NumericalError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fvawwr
