#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vortexcrit {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed field-DSL input. `offset` is the byte position in the source text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset_, const std::string& detail)
        : Error("syntax error at offset " + std::to_string(offset_) + ": " + detail),
          offset(offset_) {}

    std::size_t offset;
};

/// Field evaluation produced a non-finite intermediate (left its domain).
class DomainError : public Error {
public:
    using Error::Error;
};

/// |u| fell below the stagnation tolerance; arc length and Frenet data are undefined there.
class StagnationError : public Error {
public:
    StagnationError() : Error("stagnation point: |u| below tolerance") {}
};

/// The adaptive step size collapsed below the minimum allowed fraction of the span.
class StepUnderflowError : public Error {
public:
    using Error::Error;
};

}  // namespace vortexcrit
