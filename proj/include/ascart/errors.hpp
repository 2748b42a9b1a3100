#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ascart {

enum class ErrorKind {
    NotPrime,
    DivideByZero,
    FieldMismatch,
    IrreducibleDenominatorFactor,
    SingularTransform,
    PoleOrderDivisibleByP,
    ZeroLeadingCoefficient,
    DuplicatePoleLocation,
    MissingInfinitePole,
    ConstantTermOnFinitePole,
    ConditionNotSatisfied,
    NotInH,
    NotInSpan,
    DNotCoprime,
    InconsistentCounts,
    NotShrinkable,
    ParseError,
    FieldTooSmall,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::DivideByZero: return "DivideByZero";
        case ErrorKind::FieldMismatch: return "FieldMismatch";
        case ErrorKind::IrreducibleDenominatorFactor: return "IrreducibleDenominatorFactor";
        case ErrorKind::SingularTransform: return "SingularTransform";
        case ErrorKind::PoleOrderDivisibleByP: return "PoleOrderDivisibleByP";
        case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
        case ErrorKind::DuplicatePoleLocation: return "DuplicatePoleLocation";
        case ErrorKind::MissingInfinitePole: return "MissingInfinitePole";
        case ErrorKind::ConstantTermOnFinitePole: return "ConstantTermOnFinitePole";
        case ErrorKind::ConditionNotSatisfied: return "ConditionNotSatisfied";
        case ErrorKind::NotInH: return "NotInH";
        case ErrorKind::NotInSpan: return "NotInSpan";
        case ErrorKind::DNotCoprime: return "DNotCoprime";
        case ErrorKind::InconsistentCounts: return "InconsistentCounts";
        case ErrorKind::NotShrinkable: return "NotShrinkable";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    }
    return "Unknown";
}

/// All library failures are reported through this exception; `kind()` is the
/// stable, machine-readable part and `what()` carries the human context.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> pole = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message), pole_(pole) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// The message without the kind prefix.
    const std::string& message() const noexcept { return message_; }

    /// Index of the offending pole, for validation errors that concern one pole.
    std::optional<std::size_t> pole() const noexcept { return pole_; }

private:
    ErrorKind kind_;
    std::string message_;
    std::optional<std::size_t> pole_;
};

}  // namespace ascart
