#pragma once

#include <stdexcept>
#include <string>

namespace crsketch {

// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A matrix argument is non-finite, non-square where squareness is required,
// or otherwise unusable.
class InvalidMatrix : public Error {
public:
    using Error::Error;
};

// A matrix required to be positive semidefinite has an eigenvalue below the
// negative tolerance band.
class NotPSD : public Error {
public:
    using Error::Error;
};

// An operation requiring a connected graph received one with more than one
// component.
class DisconnectedGraph : public Error {
public:
    using Error::Error;
};

// A Laplacian whose spectrum is entirely inside the null band.
class DegenerateLaplacian : public Error {
public:
    using Error::Error;
};

// Dimension mismatch between operands.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A sampling distribution with no positive mass on any contributing index.
class DegenerateDistribution : public Error {
public:
    using Error::Error;
};

// A scalar parameter outside its documented domain.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

// A bound formula was evaluated outside the regime its derivation assumes.
class AssumptionViolated : public Error {
public:
    using Error::Error;
};

// A matrix claimed to be a boundary matrix has a malformed row.
class InvalidBoundary : public Error {
public:
    using Error::Error;
};

// Sparsification was requested on a graph without edges.
class NoEdges : public Error {
public:
    using Error::Error;
};

// Graph-level input rejected by model validation (self-loop, bad id, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// The quadratic form in a ratio's denominator is numerically null.
class NullQuadraticForm : public Error {
public:
    using Error::Error;
};

// Syntactic failure while reading a file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    long line() const { return line_; }

private:
    long line_;
};

} // namespace crsketch
