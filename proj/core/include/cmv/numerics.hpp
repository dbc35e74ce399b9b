#pragma once

// Quadrature, finite differences and limit extrapolation on BigReal.

#include <functional>
#include <vector>

#include "cmv/bigreal.hpp"
#include "cmv/precision.hpp"

namespace cmv {

/// Integrand evaluated at the calling thread's working precision.
using RealFunction = std::function<BigReal(const BigReal&)>;

/// Function of x evaluated under the given configuration; used where the
/// caller may raise the precision (finite differences).
using ConfiguredFunction = std::function<BigReal(const BigReal&, const PrecisionConfig&)>;

struct QuadratureResult {
  BigReal value;
  BigReal err;  ///< level-to-level difference plus rounding
  long evaluations = 0;
};

/// Tanh-sinh quadrature of f over [a, b]. The integrand receives abscissae
/// computed from the nearer endpoint, so endpoint singularities of integrable
/// type are tolerated. Halves the step until two levels agree within `tol`;
/// throws PrecisionError after `max_level` halvings.
QuadratureResult integrate(const RealFunction& f, const BigReal& a, const BigReal& b, const BigReal& tol,
                           int max_level = 12);

/// Integral of f(t) e^(-x t) over [0, T] split into geometric panels, where the
/// caller supplies `tail(T)`, a bound on the discarded integral over [T, inf).
/// T grows until the tail bound is below tol/2.
QuadratureResult laplace_transform(const RealFunction& f, const BigReal& x,
                                   const std::function<BigReal(const BigReal&)>& tail, const BigReal& tol);

struct FiniteDifference {
  BigReal value;
  BigReal err;     ///< Richardson residual plus rounding
  int digits = 0;  ///< precision of the last attempt
  bool converged = false;  ///< err < |value| / 10 was reached
};

/// n-th derivative of f at x by central differences with four Richardson
/// levels in h^2, starting from h0 = min(x, 1) 10^(-P/(2(n+1))). When the
/// residual exceeds 10% of the value the precision is doubled, up to
/// `max_digits`. A non-converged result is returned with converged = false.
FiniteDifference fd_derivative(const ConfiguredFunction& f, int n, const BigReal& x, const PrecisionConfig& cfg,
                               int max_digits = 100);

struct Extrapolation {
  BigReal value;
  BigReal err;  ///< smallest difference between consecutive tableau diagonals
};

/// Polynomial (Neville) extrapolation of samples y_i taken at abscissae h_i to
/// h = 0. The estimate is the diagonal entry after which the tableau stops
/// improving.
Extrapolation extrapolate_to_zero(const std::vector<BigReal>& h, const std::vector<BigReal>& y);

/// Falling factorial a (a-1) ... (a-k+1); 1 for k = 0.
BigReal falling_factorial(const BigReal& a, int k);

/// Binomial coefficient C(n, k) as a BigReal.
BigReal binomial(int n, int k);

}  // namespace cmv
