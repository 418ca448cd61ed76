#pragma once

#include <stdexcept>
#include <string>

namespace quat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Caller passed something the operation cannot accept (bad shape, bad parameter).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Malformed QMAT / QSVD / image input.
class FormatError : public Error {
public:
    using Error::Error;
};

// Numerical failures. The CLI maps all of these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class NotHermitian : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
public:
    RankDeficient(const std::string& what, long column)
        : NumericalError(what), column_(column) {}
    long column() const noexcept { return column_; }

private:
    long column_;
};

class NoConvergence : public NumericalError {
public:
    NoConvergence(const std::string& what, double best_estimate = 0.0)
        : NumericalError(what), best_(best_estimate) {}
    // Last iterate when the failing routine produces a usable estimate.
    double best_estimate() const noexcept { return best_; }

private:
    double best_;
};

class IllConditioned : public NumericalError {
public:
    IllConditioned(const std::string& what, double condition)
        : NumericalError(what), condition_(condition) {}
    double condition() const noexcept { return condition_; }

private:
    double condition_;
};

} // namespace quat
