#pragma once

#include <stdexcept>
#include <string>

namespace qqpovm {

/// Operand shapes do not conform (non-square input, mismatched dimensions).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix expected to be positive semidefinite has an eigenvalue below -tolerance.
class NotPsdError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The requested outcome has probability at or below the tolerance, so the
/// post-measurement state is undefined.
class ZeroProbabilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InvalidMeasurementError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedConventionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace qqpovm
