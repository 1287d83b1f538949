#include "hypertile/errors.h"

namespace hypertile {

const char* error_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EuclideanOrSpherical: return "EuclideanOrSpherical";
        case ErrorKind::StepOutOfRange: return "StepOutOfRange";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::DegenerateSegment: return "DegenerateSegment";
        case ErrorKind::RadiusExceeded: return "RadiusExceeded";
        case ErrorKind::CapExceeded: return "CapExceeded";
        case ErrorKind::WidthTooLarge: return "WidthTooLarge";
        case ErrorKind::TooManyTerminals: return "TooManyTerminals";
        case ErrorKind::Disconnected: return "Disconnected";
        case ErrorKind::HullTouchesBoundary: return "HullTouchesBoundary";
        case ErrorKind::NoExtension: return "NoExtension";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EuclideanOrSpherical:
        case ErrorKind::StepOutOfRange:
        case ErrorKind::ParseError:
        case ErrorKind::DegenerateSegment:
            return 2;
        case ErrorKind::RadiusExceeded:
        case ErrorKind::CapExceeded:
        case ErrorKind::WidthTooLarge:
        case ErrorKind::TooManyTerminals:
        case ErrorKind::HullTouchesBoundary:
        case ErrorKind::NoExtension:
            return 3;
        case ErrorKind::Disconnected:
        case ErrorKind::InvariantViolation:
            return 4;
    }
    return 4;
}

}  // namespace hypertile
