// itforms - error types shared across the library.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace itforms {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error in the expression grammar; position is a 0-based character index.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Identifier that is neither a chart coordinate nor a known function.
class UnknownIdentifierError : public ParseError {
public:
    UnknownIdentifierError(const std::string& ident, std::size_t pos)
        : ParseError("unknown identifier '" + ident + "'", pos), identifier(ident) {}
    std::string identifier;
};

// Numeric evaluation hit a domain problem (log of nonpositive, sqrt of
// negative, division by zero) or produced a non-finite value.
class EvalError : public Error {
public:
    using Error::Error;
};

// A sample point could not be found after the retry budget.
class SamplingError : public Error {
public:
    using Error::Error;
};

class DepthError : public Error {
public:
    using Error::Error;
};

class DegenerateMetricError : public Error {
public:
    DegenerateMetricError(const std::string& msg, std::vector<double> point)
        : Error(msg), witness(std::move(point)) {}
    std::vector<double> witness;
};

// Two computation paths that must agree did not; signals a sign-rule or
// index-layout regression rather than bad input.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class SizeError : public Error {
public:
    using Error::Error;
};

// Model-file schema violation; message carries the offending field path.
class ModelError : public Error {
public:
    using Error::Error;
};

}  // namespace itforms
