#pragma once

#include <stdexcept>
#include <string>

namespace twistor {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain: a point on an arctan cut, w = 0,
/// a chart singularity, an all-zero polynomial.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Field evaluation requested on the closure of the outer wall, where the
/// contour integrand is singular.
class WallError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Probe disagreement or unresolved quadrature during kappa calibration.
class CalibrationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace twistor
