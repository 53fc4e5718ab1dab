#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonrigid {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible lengths, arities or boxes.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed a configured resource guard.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. `line()` is 1-based, or 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nonrigid
