#pragma once

#include <stdexcept>
#include <string>

namespace z4ap {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch or dimension over the packed-word cap.
struct DimensionError : Error {
    using Error::Error;
};

/// Argument outside the documented domain (bad digit, bad prime, bad range).
struct DomainError : Error {
    using Error::Error;
};

/// Size guard tripped (tensor power cap, certificate too large to build).
struct CapacityError : Error {
    using Error::Error;
};

/// Malformed input file; line is 1-based.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

}  // namespace z4ap
