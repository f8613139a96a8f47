#pragma once

#include <stdexcept>
#include <string>

namespace crnf {

/// Malformed input: documents, rationals, exponent vectors.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands that do not live in the same polynomial ring (different n_vars,
/// bidegree mismatch where one is required).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input is well formed but the mathematics refuses it (degenerate
/// leading pure term, undetermined invariant where one is required, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace crnf
