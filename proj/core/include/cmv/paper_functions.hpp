#pragma once

// Function families built on the special functions: Phi(x) = x psi'(x) - 1 and
// its scaled derivatives, the Laguerre-series kernels f_m, g_m, Theta_m, the
// log-derivative of f_alpha, theta1, and the q-analogues.
//
// All functions validate their arguments (DomainError) and run at cfg.digits.

#include <vector>

#include "cmv/bigreal.hpp"
#include "cmv/function_id.hpp"
#include "cmv/precision.hpp"

namespace cmv {

/// Phi(x) = x psi'(x) - 1.
BigReal phi(const BigReal& x, const PrecisionConfig& cfg = {});

/// Phi^(m)(x) = x psi^(m+1)(x) + m psi^(m)(x) for m >= 1; Phi(x) for m = 0.
BigReal phi_derivative(int m, const BigReal& x, const PrecisionConfig& cfg = {});

/// (-1)^m x^alpha Phi^(m)(x).
BigReal phi_scaled(int m, const BigReal& alpha, const BigReal& x, const PrecisionConfig& cfg = {});

/// (-1)^n G^(n)(x) for n = 0..n_max, where G(x) = (-1)^m x^alpha Phi^(m)(x).
///
/// Uses Phi^(m)(x) = R_m(x) + (-1)^m m!/x^(m+1) - [m = 0] with
/// R_m(x) = x psi^(m+1)(x+1) + m psi^(m)(x+1): the pole is an exact monomial
/// and R_m is smooth at 0, so no cancellation occurs as x -> 0.
std::vector<Approx> phi_scaled_derivatives(int m, const BigReal& alpha, const BigReal& x, int n_max,
                                           const PrecisionConfig& cfg = {});

/// f_m(t), the m-th derivative of t^m/(1 - e^-t). For t >= 1 the Laguerre
/// series m! (1 + sum_k e^(-kt) L_m(kt)), with |L_m(x)| <= e^(x/2) bounding
/// the tail by m! e^(-(K+1)t/2)/(1 - e^(-t/2)); below 1 the Bernoulli
/// expansion of t/(1 - e^-t), with |B_2k|/(2k)! <= 2 zeta(2)/(2 pi)^2k.
/// series_tol is relative to the value.
SeriesValue f_m(int m, const BigReal& t, const PrecisionConfig& cfg = {});

struct FmSeries {
  SeriesValue value;       ///< f_m(t)
  SeriesValue derivative;  ///< f'_m(t)
};

/// f_m(t) and f'_m(t) from one pass; the derivative tail uses |L'_m(x)| <= m e^(x/2).
FmSeries f_m_with_derivative(int m, const BigReal& t, const PrecisionConfig& cfg = {});

/// g_m(t) = (t f_m(t))' = f_m(t) + t f'_m(t), m >= 1.
SeriesValue g_m_kernel(int m, const BigReal& t, const PrecisionConfig& cfg = {});

/// Theta_m(t) = integral_0^t u f_m(u) du by tanh-sinh quadrature, m >= 1. The
/// quadrature target is series_tol relative to m! t^2/2.
Approx theta_m(int m, const BigReal& t, const PrecisionConfig& cfg = {});

/// e^t (2 - t) - t - 2, t >= 0.
BigReal kernel_K1(const BigReal& t, const PrecisionConfig& cfg = {});

/// (1 + t e^t - e^t)^2 - t (e^t - 1)^3 / 4, t >= 0.
BigReal kernel_K2(const BigReal& t, const PrecisionConfig& cfg = {});

/// 1 - e^-t - t^2/(e^t - 1), t >= 0 (0 at t = 0).
BigReal kernel_K3(const BigReal& t, const PrecisionConfig& cfg = {});

/// K3'(t) - e^-t (1 + t e^t - e^t)^2/(e^t - 1)^2 with K3' differentiated by hand; t > 0.
BigReal kernel_K3_derivative_residual(const BigReal& t, const PrecisionConfig& cfg = {});

/// 2(m+1) phi'_{m+1}(t) - phi''_{m+2}(t) - m(m+1) phi_m(t) - t^(1+m) e^t K1(t)/(e^t - 1)^3
/// for phi_n(t) = t^n/(1 - e^-t), with the derivatives of phi_n taken exactly.
BigReal kernel_identity_residual(int m, const BigReal& t, const PrecisionConfig& cfg = {});

/// 3x^2 - x cos x + sin x.
BigReal elementary_inequality(const BigReal& x, const PrecisionConfig& cfg = {});

/// theta1(x) = x (log x - psi(x)).
Approx theta1(const BigReal& x, const PrecisionConfig& cfg = {});

/// theta1^(k)(x) for k = 0..k_max (unsigned derivatives):
/// theta1^(k) = (x log x)^(k) - x psi^(k)(x) - k psi^(k-1)(x).
std::vector<Approx> theta1_derivatives(const BigReal& x, int k_max, const PrecisionConfig& cfg = {});

/// h(t) = 1/t^2 - e^-t/(1 - e^-t)^2, with the series sum_k B_2k (2k-1) t^(2k-2)/(2k)! below t = 1.
BigReal h_kernel(const BigReal& t, const PrecisionConfig& cfg = {});

/// (-1)^n phi_alpha^(n)(x) for n = 0..n_max, phi_alpha = ((theta1 + alpha) log x)'.
std::vector<Approx> f_alpha_log_derivatives(const BigReal& alpha, const BigReal& x, int n_max,
                                            const PrecisionConfig& cfg = {});

/// (-1)^n phi_alpha^(n)(x).
Approx f_alpha_log_derivs(const BigReal& alpha, int n, const BigReal& x, const PrecisionConfig& cfg = {});

/// f_alpha(x) = x^(x(psi(x) - log x) - alpha) = exp(-(theta1(x) + alpha) log x).
BigReal f_alpha(const BigReal& alpha, const BigReal& x, const PrecisionConfig& cfg = {});

/// g_n(x) = (-1)^n theta1^(n+1)(x) log x + n!/(4 x^(n+1)), n >= 1.
Approx g_n_aux(int n, const BigReal& x, const PrecisionConfig& cfg = {});

/// (-1)^n Phi_q^(n)(x) for n = 0..n_max, 0 < q < 1, where
/// Phi_q(x) = (q^x - 1)/log q psi'_q(x) - q^x = sum_j d_j q^(jx) with
/// d_1 = l/(1-q) - 1, d_j = l (j/(1-q^j) - (j-1)/(1-q^(j-1))), l = -log q.
/// Every term is an exponential in x, so derivatives are exact termwise. The
/// tail uses d_j <= l/(1-q) and a geometric ratio bound.
std::vector<SeriesValue> phi_q_derivatives(const BigReal& q, const BigReal& x, int n_max,
                                           const PrecisionConfig& cfg = {});

/// (-1)^n Phi_q^(n)(x).
SeriesValue phi_q(const BigReal& q, int n, const BigReal& x, const PrecisionConfig& cfg = {});

/// Phi_{1/q}(x) for q > 1 (and its signed derivatives), via phi_q.
SeriesValue phi_q_inv(const BigReal& q, const BigReal& x, const PrecisionConfig& cfg = {}, int n = 0);

/// Theta_q(x) = log q q^x/(q^x - 1), 0 < q < 1.
BigReal theta_q(const BigReal& q, const BigReal& x, const PrecisionConfig& cfg = {});

/// Value of a catalog function at x (t or z for the kernel families), with
/// an absolute error bound.
Approx evaluate(const FunctionId& fid, const BigReal& x, const PrecisionConfig& cfg = {});

}  // namespace cmv
