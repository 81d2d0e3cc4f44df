#include "pipeclimb/error.hpp"

namespace pipeclimb {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonMonotoneLoad: return "NonMonotoneLoad";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::InconsistentOutputs: return "InconsistentOutputs";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::EmptyNetwork: return "EmptyNetwork";
        case ErrorCode::BadSegment: return "BadSegment";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::UnknownSize: return "UnknownSize";
        case ErrorCode::DegenerateBend: return "DegenerateBend";
        case ErrorCode::CompressionLimit: return "CompressionLimit";
        case ErrorCode::AsymmetryLimit: return "AsymmetryLimit";
        case ErrorCode::EndOfNetwork: return "EndOfNetwork";
        case ErrorCode::MaxTimeExceeded: return "MaxTimeExceeded";
        case ErrorCode::ZeroReference: return "ZeroReference";
        case ErrorCode::EmptySweep: return "EmptySweep";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace pipeclimb
