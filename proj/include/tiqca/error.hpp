#pragma once

#include <stdexcept>
#include <string>

namespace tiqca {

enum class ErrorKind {
    InvalidConfig,
    InvalidLevel,
    NotNormalized,
    SupportOverflow,
    ConfigMismatch,
    InvalidPulse,
    OracleTooLarge,
    ModeMismatch,
    NotUnitary,
    NotSpecialUnitary,
    InvalidCircuit,
    RoutingError,
    PointerNotHome,
    PartitionTooSmall,
    ReadoutEntangled,
    InvalidScaling,
    ParseError,
};

/// Library-wide exception carrying a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::InvalidLevel: return "InvalidLevel";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::SupportOverflow: return "SupportOverflow";
        case ErrorKind::ConfigMismatch: return "ConfigMismatch";
        case ErrorKind::InvalidPulse: return "InvalidPulse";
        case ErrorKind::OracleTooLarge: return "OracleTooLarge";
        case ErrorKind::ModeMismatch: return "ModeMismatch";
        case ErrorKind::NotUnitary: return "NotUnitary";
        case ErrorKind::NotSpecialUnitary: return "NotSpecialUnitary";
        case ErrorKind::InvalidCircuit: return "InvalidCircuit";
        case ErrorKind::RoutingError: return "RoutingError";
        case ErrorKind::PointerNotHome: return "PointerNotHome";
        case ErrorKind::PartitionTooSmall: return "PartitionTooSmall";
        case ErrorKind::ReadoutEntangled: return "ReadoutEntangled";
        case ErrorKind::InvalidScaling: return "InvalidScaling";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace tiqca
