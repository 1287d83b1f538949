#pragma once

#include <stdexcept>
#include <string>

namespace hypertile {

enum class ErrorKind {
    EuclideanOrSpherical,
    StepOutOfRange,
    ParseError,
    DegenerateSegment,
    RadiusExceeded,
    CapExceeded,
    WidthTooLarge,
    TooManyTerminals,
    Disconnected,
    HullTouchesBoundary,
    NoExtension,
    InvariantViolation,
};

const char* error_name(ErrorKind kind);

/// Process exit code for the CLI: 2 input error, 3 resource cap, 4 internal invariant failure.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void ensure(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::InvariantViolation, what);
}

}  // namespace hypertile
