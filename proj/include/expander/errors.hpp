#pragma once

#include <stdexcept>
#include <string>

namespace expander {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument referenced something outside its host structure
// (unknown vertex id, subset member outside the graph, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// An operation precondition does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Structurally valid input on which the requested quantity is undefined
// (zero min-side volume, single-vertex Cheeger constant, ...).
class DegenerateInputError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// A requested oracle verification did not pass.
class VerificationError : public Error {
public:
    using Error::Error;
};

// Text/JSON input could not be parsed. Carries a location.
class ParseError : public Error {
public:
    ParseError(std::string source, long line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const { return source_; }
    long line() const { return line_; }

private:
    std::string source_;
    long line_;
};

}  // namespace expander
