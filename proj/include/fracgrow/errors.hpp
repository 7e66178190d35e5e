#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracgrow {

// Base of every error the library throws. The CLI maps UsageError to exit
// code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma evaluated at zero or a negative integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// A truncated series hit its term budget before the stopping rule fired,
// or its partial sum left the finite range.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// Term-algebra power cap or coefficient magnitude guard exceeded.
class OverflowError : public Error {
public:
    using Error::Error;
};

// Input sequences of incompatible or insufficient length.
class LengthError : public Error {
public:
    using Error::Error;
};

// Data violating a documented invariant (duplicate months, negative lengths...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Bad command-line usage detected after argument parsing.
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace fracgrow
