#pragma once

// Classical and q-deformed special functions at configurable precision.
//
// Each entry point takes a PrecisionConfig, runs at cfg.digits and returns
// values carrying that precision. Domain violations throw DomainError;
// unreachable accuracy throws PrecisionError.

#include "cmv/bigreal.hpp"
#include "cmv/precision.hpp"

namespace cmv {

/// psi^(n)(x) for integer n >= 0 and x > 0 (n = 0 is the digamma function).
///
/// Raises x past a threshold with psi^(n)(x) = psi^(n)(x+1) - (-1)^n n!/x^(n+1),
/// then sums the Bernoulli asymptotic series, whose leading terms are
/// (-1)^(n+1) [(n-1)!/x^n + n!/(2x^(n+1))]. The series envelops the value, so
/// the first neglected term bounds the truncation error.
BigReal polygamma(int n, const BigReal& x, const PrecisionConfig& cfg = {});

/// As polygamma, with an absolute error bound covering truncation and rounding.
Approx polygamma_approx(int n, const BigReal& x, const PrecisionConfig& cfg = {});

/// Hurwitz zeta(s, a) = sum_{k>=0} (k+a)^-s for integer s >= 2 and a > 0,
/// via direct summation up to a shift point and an Euler-Maclaurin tail.
SeriesValue hurwitz_zeta(int s, const BigReal& a, const PrecisionConfig& cfg = {});

/// Riemann zeta(s) for integer s >= 2.
BigReal zeta(int s, const PrecisionConfig& cfg = {});

/// Laguerre polynomial L_m(x) by the three-term recurrence.
BigReal laguerre(int m, const BigReal& x, const PrecisionConfig& cfg = {});

/// L_m(x) and L'_m(x) = -sum_{k<m} L_k(x) from one recurrence pass.
struct LaguerrePair {
  BigReal value;
  BigReal derivative;
};
LaguerrePair laguerre_with_derivative(int m, const BigReal& x, const PrecisionConfig& cfg = {});

/// Hardy-Littlewood function H(z) = sum_{k>=1} sin(z/k)/k for real z.
///
/// The first K terms are summed directly. The remainder is expanded as
/// sum_j (-1)^j z^(2j+1)/(2j+1)! zeta(2j+2, K+1) and summed until its terms
/// fall below series_tol; tail_bound covers that truncation, the Hurwitz
/// tails and rounding. Passing `explicit_terms` fixes K.
SeriesValue hardy_littlewood_H(const BigReal& z, const PrecisionConfig& cfg = {},
                               long explicit_terms = 0);

/// s(z) = 1/2 + H(z / (2 pi)) / pi.
SeriesValue s_function(const BigReal& z, const PrecisionConfig& cfg = {}, long explicit_terms = 0);

/// q-trigamma psi'_q(x) = (log q)^2 sum_{k>=1} k q^(kx) / (1 - q^k), 0 < q < 1, x > 0.
/// The tail after term k is bounded by the geometric ratio (1 + 1/k) q^x.
SeriesValue q_trigamma_series(const BigReal& q, const BigReal& x, const PrecisionConfig& cfg = {});

BigReal q_trigamma(const BigReal& q, const BigReal& x, const PrecisionConfig& cfg = {});

}  // namespace cmv
