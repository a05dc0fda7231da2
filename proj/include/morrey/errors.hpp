#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Pointwise evaluation requested at a declared singular point.
class SingularPointError : public Error {
public:
    explicit SingularPointError(const std::string& msg) : Error(msg) {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

// An integral that is infinite for the requested parameters.
class DivergentError : public Error {
public:
    explicit DivergentError(const std::string& msg) : Error(msg) {}
};

// A quadrature scheme could not bound its error below the configured tolerance.
class QuadratureFailureError : public Error {
public:
    explicit QuadratureFailureError(const std::string& msg) : Error(msg) {}
};

class RangeError : public Error {
public:
    explicit RangeError(const std::string& msg) : Error(msg) {}
};

class ParameterOrderError : public Error {
public:
    explicit ParameterOrderError(const std::string& msg) : Error(msg) {}
};

// Invalid or unparseable experiment configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace morrey
