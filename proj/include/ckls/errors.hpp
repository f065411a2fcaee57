#pragma once

#include <stdexcept>
#include <string>

namespace ckls {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (x <= 0, t < 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// The power transform is undefined at gamma == 1.
class DegenerateTransform : public Error {
public:
    using Error::Error;
};

// Parameters violate the hypotheses an operation depends on.
class RegimeError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input (length mismatch, unsorted samples, bad config).
class InputError : public Error {
public:
    using Error::Error;
};

// The explicit solution hit a zero base; callers redraw.
class SingularSample : public Error {
public:
    using Error::Error;
};

// Every importance weight underflowed to zero.
class DegenerateWeights : public Error {
public:
    using Error::Error;
};

}  // namespace ckls
