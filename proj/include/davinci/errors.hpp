#pragma once

#include <stdexcept>
#include <string>

namespace davinci {

// Error codes carried by every davinci exception. The CLI maps
// ParseError to exit code 2 and everything else to exit code 1.
enum class ErrorCode {
    MalformedRotation,
    DanglingEdge,
    OddCharacteristic,
    ConnectivityRequired,
    NotCubic,
    Disconnected,
    IdentityViolated,
    QuotientNotCellular,
    FitFailed,
    EmptyPatch,
    NonTriangularFace,
    DegenerateCorner,
    InvalidDepths,
    DegenerateJunction,
    ParseError,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace davinci
