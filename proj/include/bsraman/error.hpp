#pragma once

#include <stdexcept>
#include <string>

namespace bsraman {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A physical input or an operation precondition was violated.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// Malformed or unknown configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Step-size violations and non-finite states in the ODE oracle.
class IntegratorError : public Error {
public:
    using Error::Error;
};

// Fourier window too short, aliasing, or an unusable line list.
class SpectrumError : public Error {
public:
    using Error::Error;
};

}  // namespace bsraman
