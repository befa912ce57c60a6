#include "fvawwr/errors.hpp"

namespace fvawwr {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonMonotoneTimes: return "NonMonotoneTimes";
        case ErrorCode::NonPositiveFactor: return "NonPositiveFactor";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::TimeOrder: return "TimeOrder";
        case ErrorCode::NotSPD: return "NotSPD";
        case ErrorCode::NoRoot: return "NoRoot";
        case ErrorCode::PositivityViolation: return "PositivityViolation";
        case ErrorCode::FellerViolation: return "FellerViolation";
        case ErrorCode::UnknownScenario: return "UnknownScenario";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::MissingFixing: return "MissingFixing";
        case ErrorCode::NumericalError: return "NumericalError";
    }
    return "Unknown";
}

}  // namespace fvawwr
