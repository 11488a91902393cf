#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace micz {

enum class ErrorCode {
    // user / validation errors
    NegativeQuantumNumber,
    ParityMismatch,
    EmptySector,
    NonpositiveCharge,
    IndexOutOfRange,
    LambdaOutOfRange,
    DomainError,
    InvalidArgument,
    // exact-arithmetic closure
    RadicandMismatch,
    // numerical failures
    ConvergenceFailure,
    DegenerateShift,
    BranchMatchAmbiguous,
    LimitMismatch,
    // internal consistency
    FactorialOfNegative,
    OrthogonalityViolation,
};

enum class ErrorClass { Validation, Numerical, Internal };

constexpr std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::NegativeQuantumNumber: return "NegativeQuantumNumber";
    case ErrorCode::ParityMismatch: return "ParityMismatch";
    case ErrorCode::EmptySector: return "EmptySector";
    case ErrorCode::NonpositiveCharge: return "NonpositiveCharge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RadicandMismatch: return "RadicandMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateShift: return "DegenerateShift";
    case ErrorCode::BranchMatchAmbiguous: return "BranchMatchAmbiguous";
    case ErrorCode::LimitMismatch: return "LimitMismatch";
    case ErrorCode::FactorialOfNegative: return "FactorialOfNegative";
    case ErrorCode::OrthogonalityViolation: return "OrthogonalityViolation";
    }
    return "Unknown";
}

constexpr ErrorClass error_class(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::DegenerateShift:
    case ErrorCode::BranchMatchAmbiguous:
    case ErrorCode::LimitMismatch:
        return ErrorClass::Numerical;
    case ErrorCode::FactorialOfNegative:
    case ErrorCode::OrthogonalityViolation:
        return ErrorClass::Internal;
    default:
        return ErrorClass::Validation;
    }
}

/// Exception carrying a machine-readable error code. what() is
/// "<ErrorName>: <detail>".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace micz
