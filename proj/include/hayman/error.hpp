#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hayman
{

enum class ErrorCode {
    DivisionByZero,
    IncompatibleExtensions,
    NestedExtension,
    PoleAtPoint,
    IrreducibleDenominator,
    NearPole,
    GammaIdenticallyZero,
    PointInPhi,
    Unsupported,
    ResonanceCapExceeded,
    DomainViolation,
    TranscendentalConstant,
    SyntaxError,
    ZeroDenominatorLiteral,
    InvalidArgument,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::IncompatibleExtensions: return "IncompatibleExtensions";
    case ErrorCode::NestedExtension: return "NestedExtension";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::IrreducibleDenominator: return "IrreducibleDenominator";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::GammaIdenticallyZero: return "GammaIdenticallyZero";
    case ErrorCode::PointInPhi: return "PointInPhi";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ResonanceCapExceeded: return "ResonanceCapExceeded";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::TranscendentalConstant: return "TranscendentalConstant";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ZeroDenominatorLiteral: return "ZeroDenominatorLiteral";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

// Every module reports failures through this one exception type. The code is
// the machine-readable part surfaced by the CLI.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& message, std::optional<std::size_t> position = std::nullopt)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), position_(position)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    // Character offset for parser errors.
    std::optional<std::size_t> position() const noexcept { return position_; }
    // Auxiliary integer payload (pole order for PoleAtPoint).
    int detail() const noexcept { return detail_; }
    Error& with_detail(int d)
    {
        detail_ = d;
        return *this;
    }

private:
    ErrorCode code_;
    std::optional<std::size_t> position_;
    int detail_ = 0;
};

} // namespace hayman
