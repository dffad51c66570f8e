#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lscat {

enum class ErrorCode {
    Malformed,
    InvalidGroup,
    ShapeMismatch,
    LengthMismatch,
    NotSquare,
    NotUnimodular,
    DimensionTooLarge,
    IllDefined,
    NotEpimorphism,
    CodomainInfinite,
    DomainHasTorsion,
    TorsionNotKilled,
    NotCanonicalForm,
    ResourceCap,
    NoWitness,
    VerificationFailed,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::IllDefined: return "IllDefined";
    case ErrorCode::NotEpimorphism: return "NotEpimorphism";
    case ErrorCode::CodomainInfinite: return "CodomainInfinite";
    case ErrorCode::DomainHasTorsion: return "DomainHasTorsion";
    case ErrorCode::TorsionNotKilled: return "TorsionNotKilled";
    case ErrorCode::NotCanonicalForm: return "NotCanonicalForm";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    }
    return "Unknown";
}

/// Input-shaped failures (bad JSON, wrong lengths) as opposed to
/// mathematical obstructions on well-formed input.
constexpr bool is_input_error(ErrorCode code) noexcept {
    return code == ErrorCode::Malformed || code == ErrorCode::InvalidGroup ||
           code == ErrorCode::ShapeMismatch || code == ErrorCode::LengthMismatch;
}

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code), detail_(detail) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

  private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace lscat
