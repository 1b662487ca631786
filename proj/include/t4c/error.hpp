#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace t4c {

enum class ErrorCode {
    Format,
    Length,
    UnsupportedVersion,
    Io,
    Parse,
    Bounds,
    Size,
    Stride,
    Shape,
    Scale,
    Numeric,
    Coverage,
    Generation,
    Load,
    Config,
    DegenerateLoss,
    Divergence,
    Empty,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace t4c
