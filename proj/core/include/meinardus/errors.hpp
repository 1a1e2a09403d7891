#ifndef MEINARDUS_ERRORS_HPP
#define MEINARDUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meinardus {

// Base of every error raised by the library. Callers that only care about
// "the computation failed" catch this one.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation at a pole (zeta at 1).
class PoleError : public Error {
public:
    using Error::Error;
};

// A table is shorter than the range requested from it.
class LengthError : public Error {
public:
    using Error::Error;
};

// A value type was constructed with data violating its invariants.
class InvariantError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// The saddle-point equation has no positive root for the requested size.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

// Malformed family / grid / rational text.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace meinardus

#endif
