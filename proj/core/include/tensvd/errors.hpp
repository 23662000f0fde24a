#pragma once

#include <stdexcept>
#include <string>

namespace tensvd {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated shape/dimension contract (mismatched dims, invalid mode, rank out
// of range, ...).
class ShapeError : public Error {
public:
    using Error::Error;
};

// A stored-fraction budget too small to hold even the factor matrices.
class InfeasibleTargetError : public Error {
public:
    InfeasibleTargetError(const std::string& what, double min_achievable_fraction)
        : Error(what), min_achievable_fraction_(min_achievable_fraction) {}

    // Smallest stored fraction this input can reach (factor matrices alone).
    double min_achievable_fraction() const noexcept { return min_achievable_fraction_; }

private:
    double min_achievable_fraction_;
};

// File / image I/O failure.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tensvd
