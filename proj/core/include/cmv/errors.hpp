#pragma once

#include <stdexcept>
#include <string>

namespace cmv {

/// An argument lies outside the domain of the function being evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested accuracy cannot be reached within the configured limits
/// (series cutoff, extrapolation divergence, finite-difference breakdown).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: decimal numbers, function specs, JSON envelopes.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace cmv
