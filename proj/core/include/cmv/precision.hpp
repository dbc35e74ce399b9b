#pragma once

#include <string>

#include "cmv/bigreal.hpp"

namespace cmv {

/// Accuracy targets for one computation context.
///
/// `series_tol` is the truncation target for infinite series and quadrature.
/// Series whose terms scale with the result (polygamma, f_m, the q-series)
/// interpret it relative to the magnitude of the sum; the Hardy-Littlewood
/// series and quadratures treat it as absolute.
struct PrecisionConfig {
  int digits = kDefaultDigits;
  double series_tol_exponent = -kDefaultDigits;  ///< series_tol = 10^exponent
  long max_terms = 2'000'000;

  /// Default config for `digits`, with series_tol = 10^-digits.
  static PrecisionConfig with_digits(int digits);

  /// Throws DomainError unless digits >= 30, series_tol > 0, max_terms >= 100.
  void validate() const;

  /// Truncation target as a BigReal at the calling thread's precision.
  BigReal series_tol() const;

  friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

/// Reads CM_VERIFY_PRECISION (decimal digits) if set, otherwise 50 digits.
PrecisionConfig default_precision_from_env();

/// A truncated series together with a bound on what was left out.
struct SeriesValue {
  BigReal value;
  BigReal tail_bound;    ///< >= 0
  long terms_used = 0;
  bool estimated = false;  ///< tail_bound is heuristic rather than certified
};

/// A value with an absolute error bound (rounding plus truncation).
struct Approx {
  BigReal value;
  BigReal err;  ///< >= 0
};

}  // namespace cmv
