#pragma once

#include <stdexcept>
#include <string>

namespace eccforge {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input, out-of-range ids, bad file contents.
class InputError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A desk-scale size guard was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// Certificate extraction could not produce an assignment.
class ExtractionError : public Error {
public:
    using Error::Error;
};

}  // namespace eccforge
