#include "t4c/error.hpp"

namespace t4c {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Format: return "format";
        case ErrorCode::Length: return "length";
        case ErrorCode::UnsupportedVersion: return "unsupported-version";
        case ErrorCode::Io: return "io";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::Bounds: return "bounds";
        case ErrorCode::Size: return "size";
        case ErrorCode::Stride: return "stride";
        case ErrorCode::Shape: return "shape";
        case ErrorCode::Scale: return "scale";
        case ErrorCode::Numeric: return "numeric";
        case ErrorCode::Coverage: return "coverage";
        case ErrorCode::Generation: return "generation";
        case ErrorCode::Load: return "load";
        case ErrorCode::Config: return "config";
        case ErrorCode::DegenerateLoss: return "degenerate-loss";
        case ErrorCode::Divergence: return "divergence";
        case ErrorCode::Empty: return "empty";
    }
    return "unknown";
}

}  // namespace t4c
