#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace enwsn {

// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

class EmptyTraceError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientDataError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Bad parameters or configuration values.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Degenerate model fit (edge windows share the same centroid time).
class FitError : public Error {
public:
    using Error::Error;
};

class UnreachableNodeError : public Error {
public:
    using Error::Error;
};

// A hardware configuration that cannot run the requested workload.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

}  // namespace enwsn
