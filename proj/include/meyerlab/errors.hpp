#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace meyerlab {

enum class ErrorKind {
    SingularBasis,
    InjectivityFailure,
    DensityFailure,
    BoxTooLarge,
    NotALatticeProjection,
    DimensionMismatch,
    InvalidWindow,
    InvalidArgument,
    TooFewPoints,
    InsufficientRegion,
    ArithmeticOverflow,
    Unsupported,
    ParseError,
    IoError,
    ConfigError,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SingularBasis: return "SingularBasis";
        case ErrorKind::InjectivityFailure: return "InjectivityFailure";
        case ErrorKind::DensityFailure: return "DensityFailure";
        case ErrorKind::BoxTooLarge: return "BoxTooLarge";
        case ErrorKind::NotALatticeProjection: return "NotALatticeProjection";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::InvalidWindow: return "InvalidWindow";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::TooFewPoints: return "TooFewPoints";
        case ErrorKind::InsufficientRegion: return "InsufficientRegion";
        case ErrorKind::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above; the
/// message starts with the kind name so CLI output stays greppable.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace meyerlab
