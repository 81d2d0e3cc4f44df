#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pipeclimb {

enum class ErrorCode {
    // differential-core
    NonMonotoneLoad,
    NoBracket,
    InconsistentOutputs,
    InvalidConfig,
    // pipe-geometry
    EmptyNetwork,
    BadSegment,
    OutOfRange,
    UnknownSize,
    // robot-model
    DegenerateBend,
    CompressionLimit,
    AsymmetryLimit,
    // simulator
    EndOfNetwork,
    MaxTimeExceeded,
    ZeroReference,
    EmptySweep,
    // cli-io
    ParseError,
    ValidationError,
    IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pipeclimb
