#pragma once

#include <stdexcept>
#include <string>

namespace torselab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression source. Positions are 1-based within the string.
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, std::string expected)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(col) +
                ": expected " + expected),
          line(line), col(col), expected(std::move(expected)) {}

    int line;
    int col;
    std::string expected;
};

class UnknownFunctionError : public Error {
public:
    UnknownFunctionError(std::string name, int col)
        : Error("unknown function '" + name + "' at col " + std::to_string(col)),
          name(std::move(name)), col(col) {}

    std::string name;
    int col;
};

class UnknownVariableError : public Error {
public:
    UnknownVariableError(std::string name, int col)
        : Error("unknown variable '" + name + "' at col " + std::to_string(col) +
                " (coordinates are x1..x9)"),
          name(std::move(name)), col(col) {}

    std::string name;
    int col;
};

class UnboundParameterError : public Error {
public:
    explicit UnboundParameterError(std::string name)
        : Error("unbound parameter '" + name + "'"), name(std::move(name)) {}

    std::string name;
};

/// Evaluation left the real domain (log of a non-positive value, division
/// by zero, cot at a multiple of pi, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class SingularMetricError : public Error {
public:
    using Error::Error;
};

class ZeroVectorError : public Error {
public:
    using Error::Error;
};

class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

class FileNotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace torselab
