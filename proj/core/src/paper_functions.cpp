#include "cmv/paper_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmv/bernoulli.hpp"
#include "cmv/errors.hpp"
#include "cmv/numerics.hpp"
#include "cmv/special_functions.hpp"

namespace cmv {

namespace {

void require_positive(const BigReal& x, const char* fn) {
  if (!x.is_finite() || !(x > 0)) {
    throw DomainError(std::string(fn) + ": argument must be > 0, got " + x.str(20));
  }
}

void require_nonnegative(const BigReal& x, const char* fn) {
  if (!x.is_finite() || x < 0) {
    throw DomainError(std::string(fn) + ": argument must be >= 0, got " + x.str(20));
  }
}

void require_order(int m, int lowest, const char* fn) {
  if (m < lowest) {
    throw DomainError(std::string(fn) + ": order must be >= " + std::to_string(lowest) + ", got " +
                      std::to_string(m));
  }
}

// Extra digits that absorb the relative cancellation ~ t^-power near t = 0.
int guard_digits(const BigReal& t, int power) {
  if (t >= 1 || t.is_zero()) return 5;
  return 5 + power * static_cast<int>(std::ceil(-std::log10(t.to_double())));
}

// f_m switches from the Bernoulli expansion to the Laguerre series here.
constexpr double kLaguerreFrom = 1.0;

FmSeries fm_bernoulli(int m, const BigReal& t, const BigReal& tol) {
  // t^m/(1 - e^-t) = t^(m-1) + t^m/2 + sum_k B_2k/(2k)! t^(2k+m-1), differentiated m times.
  const BigReal u = rounding_unit();
  BigReal value = factorial(static_cast<unsigned long>(m)) / 2;
  BigReal deriv;
  if (m == 0) {
    value += 1 / t;
    deriv -= 1 / (t * t);
  }
  BigReal abs_value = abs(value);
  BigReal abs_deriv = abs(deriv);

  const BigReal two_pi_sq = 4 * pi() * pi();
  const BigReal ratio_base = t * t / two_pi_sq;
  const BigReal two_zeta2 = pi() * pi() / 3;
  BigReal rising = factorial(static_cast<unsigned long>(m + 1));  // (2k+m-1)!/(2k-1)!
  BigReal tpow = t;                                                // t^(2k-1)
  BigReal scale = 1 / two_pi_sq;                                   // (2 pi)^-2k
  BigReal rest;
  BigReal deriv_rest;
  long k = 1;
  for (;; ++k) {
    if (k > 20000) throw PrecisionError("f_m: Bernoulli expansion did not converge");
    const BigReal b = bernoulli_over_factorial(static_cast<int>(2 * k));
    BigReal term = b * rising * tpow;
    BigReal dterm = term * (2 * k - 1) / t;
    value += term;
    deriv += dterm;
    abs_value += abs(term);
    abs_deriv += abs(dterm);

    BigReal rising_next = rising * (2 * k + m + 1) * (2 * k + m) / ((2 * k + 1) * (2 * k));
    BigReal tpow_next = tpow * t * t;
    BigReal scale_next = scale / two_pi_sq;
    // Majorant of |term_{k+1}| and the ratio that bounds every later majorant.
    BigReal majorant = two_zeta2 * rising_next * tpow_next * scale_next;
    BigReal rho = ratio_base * BigReal(2 * k + m + 3) * (2 * k + m + 2) / (BigReal(2 * k + 3) * (2 * k + 2));
    BigReal rho_deriv = rho * (2 * k + 3) / (2 * k + 1);
    if (rho_deriv < 1) {
      rest = majorant / (1 - rho);
      deriv_rest = majorant * (2 * k + 1) / t / (1 - rho_deriv);
      if (rest <= tol * abs(value) && t * deriv_rest <= tol * abs(value)) break;
    }
    rising = std::move(rising_next);
    tpow = std::move(tpow_next);
    scale = std::move(scale_next);
  }
  FmSeries out;
  out.value.value = value;
  out.value.tail_bound = rest + u * abs_value * 8;
  out.value.terms_used = k;
  out.derivative.value = deriv;
  out.derivative.tail_bound = deriv_rest + u * abs_deriv * 8;
  out.derivative.terms_used = k;
  return out;
}

FmSeries fm_laguerre(int m, const BigReal& t, const BigReal& tol, const PrecisionConfig& cfg) {
  const BigReal u = rounding_unit();
  const BigReal mf = factorial(static_cast<unsigned long>(m));
  const BigReal r = exp(-t);
  const BigReal rh = exp(-t / 2);
  const BigReal one_minus_rh = -expm1(-t / 2);
  BigReal rk = r;    // e^(-kt)
  BigReal rhk = rh;  // e^(-kt/2)
  BigReal sum;
  BigReal dsum;
  BigReal tail;
  BigReal dtail;
  long k = 1;
  for (;; ++k) {
    if (k > cfg.max_terms) throw PrecisionError("f_m: Laguerre series exceeded max_terms");
    LaguerrePair lp = laguerre_with_derivative(m, t * k, cfg);
    sum += rk * lp.value;
    dsum += k * rk * (lp.derivative - lp.value);
    BigReal rhk1 = rhk * rh;
    // sum_{j>k} e^(-jt/2) and (m+1) sum_{j>k} j e^(-jt/2)
    tail = rhk1 / one_minus_rh;
    dtail = (m + 1) * rhk1 * ((k + 1) - k * rh) / (one_minus_rh * one_minus_rh);
    const BigReal level = abs(1 + sum) * tol;
    if (tail <= level && t * dtail <= level) break;
    rk *= r;
    rhk = std::move(rhk1);
  }
  const BigReal abs_scale = 1 + rh / one_minus_rh;
  const BigReal dabs_scale = (m + 1) * rh / (one_minus_rh * one_minus_rh);
  FmSeries out;
  out.value.value = mf * (1 + sum);
  out.value.tail_bound = mf * (tail + u * abs_scale * (m + 4) * 4);
  out.value.terms_used = k;
  out.derivative.value = mf * dsum;
  out.derivative.tail_bound = mf * (dtail + u * dabs_scale * (m + 4) * 4);
  out.derivative.terms_used = k;
  return out;
}

}  // namespace

BigReal phi(const BigReal& x, const PrecisionConfig& cfg) { return phi_derivative(0, x, cfg); }

BigReal phi_derivative(int m, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 0, "phi_derivative");
  require_positive(x_in, "phi");
  const BigReal x = working_copy(x_in);
  if (m == 0) return x * polygamma(1, x, cfg) - 1;
  return x * polygamma(m + 1, x, cfg) + m * polygamma(m, x, cfg);
}

BigReal phi_scaled(int m, const BigReal& alpha, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_positive(x_in, "phi_scaled");
  const BigReal x = working_copy(x_in);
  BigReal v = pow(x, working_copy(alpha)) * phi_derivative(m, x, cfg);
  return m % 2 == 0 ? v : -v;
}

std::vector<Approx> phi_scaled_derivatives(int m, const BigReal& alpha_in, const BigReal& x_in, int n_max,
                                           const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 0, "phi_scaled");
  require_order(n_max, 0, "phi_scaled derivative table");
  require_positive(x_in, "phi_scaled");
  if (!alpha_in.is_finite()) throw DomainError("phi_scaled: alpha must be finite");
  const BigReal x = working_copy(x_in);
  const BigReal alpha = working_copy(alpha_in);
  const BigReal u = rounding_unit();
  const BigReal x1 = x + 1;

  std::vector<Approx> psi(static_cast<std::size_t>(m + n_max + 2));
  for (int k = std::max(m, 1); k <= m + n_max + 1; ++k) psi[k] = polygamma_approx(k, x1, cfg);

  // R^(j)(x) = x psi^(m+1+j)(x+1) + (m+j) psi^(m+j)(x+1)
  std::vector<Approx> r(static_cast<std::size_t>(n_max + 1));
  for (int j = 0; j <= n_max; ++j) {
    const Approx& hi = psi[m + 1 + j];
    BigReal a = x * hi.value;
    BigReal err = x * hi.err + u * abs(a) * 2;
    BigReal value = a;
    if (m + j > 0) {
      const Approx& lo = psi[m + j];
      BigReal b = lo.value * (m + j);
      value += b;
      err += lo.err * (m + j) + u * abs(b) * 2;
    }
    r[j] = {value, err};
  }

  const BigReal mf = factorial(static_cast<unsigned long>(m));
  const BigReal x_alpha = pow(x, alpha);
  std::vector<Approx> out;
  out.reserve(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    BigReal acc;
    BigReal acc_abs;
    BigReal err;
    BigReal xpow = x_alpha;  // x^(alpha-k)
    BigReal ff = 1;          // alpha (alpha-1) ... (alpha-k+1)
    for (int k = 0; k <= n; ++k) {
      BigReal c = binomial(n, k) * ff * xpow;
      BigReal term = c * r[n - k].value;
      acc += term;
      acc_abs += abs(term);
      err += abs(c) * r[n - k].err;
      ff *= alpha - k;
      xpow /= x;
    }
    if (m % 2 == 1) acc = -acc;
    // Derivatives of the exact pole m! x^(alpha-m-1) and, for m = 0, of -x^alpha.
    const BigReal pole_exp = alpha - (m + 1);
    BigReal pole = mf * falling_factorial(pole_exp, n) * pow(x, pole_exp - n);
    acc += pole;
    acc_abs += abs(pole);
    if (m == 0) {
      BigReal c0 = falling_factorial(alpha, n) * pow(x, alpha - n);
      acc -= c0;
      acc_abs += abs(c0);
    }
    Approx entry;
    entry.value = n % 2 == 0 ? acc : -acc;
    entry.err = err + u * acc_abs * (8 + n);
    out.push_back(std::move(entry));
  }
  return out;
}

FmSeries f_m_with_derivative(int m, const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 0, "f_m");
  require_positive(t_in, "f_m");
  const BigReal t = working_copy(t_in);
  const BigReal tol = cfg.series_tol();
  if (t < kLaguerreFrom) return fm_bernoulli(m, t, tol);
  return fm_laguerre(m, t, tol, cfg);
}

SeriesValue f_m(int m, const BigReal& t, const PrecisionConfig& cfg) {
  return f_m_with_derivative(m, t, cfg).value;
}

SeriesValue g_m_kernel(int m, const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 1, "g_m");
  const BigReal t = working_copy(t_in);
  FmSeries f = f_m_with_derivative(m, t, cfg);
  SeriesValue out;
  out.value = f.value.value + t * f.derivative.value;
  out.tail_bound = f.value.tail_bound + t * f.derivative.tail_bound + rounding_unit() * abs(out.value);
  out.terms_used = f.value.terms_used;
  return out;
}

Approx theta_m(int m, const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 1, "theta_m");
  require_positive(t_in, "theta_m");
  const BigReal t = working_copy(t_in);
  const BigReal scale = factorial(static_cast<unsigned long>(m)) * t * t / 2;
  BigReal worst_relative_tail;
  auto integrand = [&](const BigReal& s) {
    SeriesValue f = f_m(m, s, cfg);
    if (!f.value.is_zero()) worst_relative_tail = max(worst_relative_tail, f.tail_bound / abs(f.value));
    return s * f.value;
  };
  QuadratureResult q = integrate(integrand, BigReal(0), t, cfg.series_tol() * scale);
  Approx out;
  out.value = q.value;
  out.err = q.err + worst_relative_tail * (abs(q.value) + scale);
  return out;
}

BigReal kernel_K1(const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_nonnegative(t_in, "kernel_K1");
  const BigReal t = working_copy(t_in);
  if (t < 1) {
    // e^t (2 - t) - t - 2 = sum_{k>=3} (2 - k) t^k / k!
    const BigReal u = rounding_unit();
    BigReal sum;
    BigReal power = t * t * t / 6;
    for (int k = 3;; ++k) {
      BigReal term = power * (2 - k);
      sum += term;
      if (abs(term) <= u * abs(sum) || term.is_zero()) break;
      power *= t / (k + 1);
    }
    return sum;
  }
  return exp(t) * (2 - t) - t - 2;
}

BigReal kernel_K2(const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_nonnegative(t_in, "kernel_K2");
  BigReal result;
  {
    PrecisionScope guard(cfg.digits + guard_digits(t_in, 1));
    const BigReal t = working_copy(t_in);
    BigReal a;  // 1 + t e^t - e^t
    if (t < 1) {
      const BigReal u = rounding_unit();
      BigReal power = t * t / 2;
      for (int k = 2;; ++k) {
        BigReal term = power * (k - 1);
        a += term;
        if (abs(term) <= u * abs(a) || term.is_zero()) break;
        power *= t / (k + 1);
      }
    } else {
      a = 1 + t * exp(t) - exp(t);
    }
    const BigReal b = expm1(t);
    result = a * a - t * b * b * b / 4;
  }
  return working_copy(result);
}

BigReal kernel_K3(const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_nonnegative(t_in, "kernel_K3");
  if (t_in.is_zero()) return BigReal(0);
  BigReal result;
  {
    PrecisionScope guard(cfg.digits + guard_digits(t_in, 2));
    const BigReal t = working_copy(t_in);
    result = -expm1(-t) - t * t / expm1(t);
  }
  return working_copy(result);
}

BigReal kernel_K3_derivative_residual(const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_positive(t_in, "kernel_K3_derivative_residual");
  const BigReal t = working_copy(t_in);
  const BigReal em1 = expm1(t);
  const BigReal et = exp(t);
  const BigReal e_neg = exp(-t);
  // d/dt [1 - e^-t - t^2/(e^t - 1)]
  const BigReal lhs = e_neg - (2 * t * em1 - t * t * et) / (em1 * em1);
  const BigReal a = 1 + t * et - et;
  const BigReal rhs = e_neg * a * a / (em1 * em1);
  return lhs - rhs;
}

BigReal kernel_identity_residual(int m, const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(m, 1, "kernel_identity_residual");
  require_positive(t_in, "kernel_identity_residual");
  const BigReal t = working_copy(t_in);
  // w = 1/(1 - E), E = e^-t: w' = -E w^2, w'' = E w^2 + 2 E^2 w^3.
  const BigReal e = exp(-t);
  const BigReal w = 1 / -expm1(-t);
  const BigReal w1 = -e * w * w;
  const BigReal w2 = e * w * w + 2 * e * e * w * w * w;
  auto tp = [&](int k) { return pow(t, static_cast<long>(k)); };
  auto phi_n = [&](int n) { return tp(n) * w; };
  auto phi_n1 = [&](int n) { return n * tp(n - 1) * w + tp(n) * w1; };
  auto phi_n2 = [&](int n) {
    BigReal v = 2 * n * tp(n - 1) * w1 + tp(n) * w2;
    if (n >= 2) v += BigReal(n) * (n - 1) * tp(n - 2) * w;
    return v;
  };
  const BigReal lhs = 2 * (m + 1) * phi_n1(m + 1) - phi_n2(m + 2) - BigReal(m) * (m + 1) * phi_n(m);
  const BigReal em1 = expm1(t);
  const BigReal rhs = tp(m + 1) * exp(t) / (em1 * em1 * em1) * kernel_K1(t, cfg);
  return lhs - rhs;
}

BigReal elementary_inequality(const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal x = working_copy(x_in);
  return 3 * x * x - x * cos(x) + sin(x);
}

std::vector<Approx> theta1_derivatives(const BigReal& x_in, int k_max, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(k_max, 0, "theta1 derivative table");
  require_positive(x_in, "theta1");
  const BigReal x = working_copy(x_in);
  const BigReal u = rounding_unit();
  const BigReal lx = log(x);
  std::vector<Approx> psi;
  for (int k = 0; k <= k_max; ++k) psi.push_back(polygamma_approx(k, x, cfg));
  std::vector<Approx> out;
  for (int k = 0; k <= k_max; ++k) {
    BigReal xlog;  // (x log x)^(k)
    if (k == 0) {
      xlog = x * lx;
    } else if (k == 1) {
      xlog = lx + 1;
    } else {
      xlog = factorial(static_cast<unsigned long>(k - 2)) / pow(x, static_cast<long>(k - 1));
      if (k % 2 == 1) xlog = -xlog;
    }
    BigReal a = x * psi[k].value;
    BigReal err = x * psi[k].err;
    BigReal value = xlog - a;
    BigReal magnitude = abs(xlog) + abs(a);
    if (k >= 1) {
      BigReal b = psi[k - 1].value * k;
      value -= b;
      magnitude += abs(b);
      err += psi[k - 1].err * k;
    }
    out.push_back({value, err + u * magnitude * 4});
  }
  return out;
}

Approx theta1(const BigReal& x, const PrecisionConfig& cfg) { return theta1_derivatives(x, 0, cfg)[0]; }

BigReal h_kernel(const BigReal& t_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_positive(t_in, "h_kernel");
  const BigReal t = working_copy(t_in);
  if (t < 1) {
    const BigReal u = rounding_unit();
    BigReal sum;
    BigReal power = 1;  // t^(2k-2)
    const BigReal t2 = t * t;
    for (int k = 1; k < 10000; ++k) {
      BigReal term = bernoulli_over_factorial(2 * k) * (2 * k - 1) * power;
      sum += term;
      if (abs(term) <= u * abs(sum)) break;
      power *= t2;
    }
    return sum;
  }
  const BigReal s = sinh(t / 2);
  return 1 / (t * t) - 1 / (4 * s * s);
}

std::vector<Approx> f_alpha_log_derivatives(const BigReal& alpha_in, const BigReal& x_in, int n_max,
                                            const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(n_max, 0, "f_alpha derivative table");
  require_positive(x_in, "f_alpha");
  if (!alpha_in.is_finite()) throw DomainError("f_alpha: alpha must be finite");
  const BigReal x = working_copy(x_in);
  const BigReal alpha = working_copy(alpha_in);
  const BigReal u = rounding_unit();
  std::vector<Approx> th = theta1_derivatives(x, n_max + 1, cfg);
  th[0].value += alpha;

  // (log x)^(i): log x for i = 0, (-1)^(i-1) (i-1)!/x^i otherwise.
  std::vector<BigReal> lg(static_cast<std::size_t>(n_max + 2));
  lg[0] = log(x);
  for (int i = 1; i <= n_max + 1; ++i) {
    lg[i] = factorial(static_cast<unsigned long>(i - 1)) / pow(x, static_cast<long>(i));
    if (i % 2 == 0) lg[i] = -lg[i];
  }

  std::vector<Approx> out;
  for (int n = 0; n <= n_max; ++n) {
    BigReal acc;
    BigReal magnitude;
    BigReal err;
    for (int j = 0; j <= n + 1; ++j) {
      BigReal c = binomial(n + 1, j) * lg[n + 1 - j];
      BigReal term = c * th[j].value;
      acc += term;
      magnitude += abs(term);
      err += abs(c) * th[j].err;
    }
    out.push_back({n % 2 == 0 ? acc : -acc, err + u * magnitude * (8 + n)});
  }
  return out;
}

Approx f_alpha_log_derivs(const BigReal& alpha, int n, const BigReal& x, const PrecisionConfig& cfg) {
  require_order(n, 0, "f_alpha_log_derivs");
  return f_alpha_log_derivatives(alpha, x, n, cfg)[static_cast<std::size_t>(n)];
}

BigReal f_alpha(const BigReal& alpha, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_positive(x_in, "f_alpha");
  const BigReal x = working_copy(x_in);
  return exp(-((theta1(x, cfg).value + working_copy(alpha)) * log(x)));
}

Approx g_n_aux(int n, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(n, 1, "g_n");
  require_positive(x_in, "g_n");
  const BigReal x = working_copy(x_in);
  const BigReal u = rounding_unit();
  std::vector<Approx> th = theta1_derivatives(x, n + 1, cfg);
  const BigReal lx = log(x);
  BigReal a = th[n + 1].value * lx;
  if (n % 2 == 1) a = -a;
  const BigReal b = factorial(static_cast<unsigned long>(n)) / (4 * pow(x, static_cast<long>(n + 1)));
  Approx out;
  out.value = a + b;
  out.err = th[n + 1].err * abs(lx) + u * (abs(a) + abs(b)) * 4;
  return out;
}

std::vector<SeriesValue> phi_q_derivatives(const BigReal& q_in, const BigReal& x_in, int n_max,
                                           const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  require_order(n_max, 0, "phi_q derivative table");
  const BigReal q = working_copy(q_in);
  if (!(q > 0 && q < 1)) throw DomainError("phi_q: q must lie in (0, 1), got " + q.str(20));
  require_positive(x_in, "phi_q");
  const BigReal x = working_copy(x_in);
  const BigReal u = rounding_unit();
  const BigReal tol = cfg.series_tol();

  const BigReal l = -log(q);
  const BigReal one_minus_q = -expm1(-l);
  const BigReal r = exp(-(l * x));  // q^x
  const BigReal d_bound = l / one_minus_q;
  const std::size_t width = static_cast<std::size_t>(n_max + 1);
  std::vector<BigReal> sum(width);
  std::vector<BigReal> magnitude(width);
  std::vector<BigReal> tail(width);

  BigReal c_prev;                   // c_{j-1} = (j-1)/(1 - q^(j-1))
  BigReal one_minus_qj = one_minus_q;  // 1 - q^j, accumulated without cancellation
  BigReal qj = q;
  BigReal rj = r;  // q^(jx)
  BigReal jl = l;  // j l
  long j = 1;
  for (;; ++j) {
    if (j > cfg.max_terms) throw PrecisionError("phi_q: series exceeded max_terms");
    const BigReal c = j / one_minus_qj;
    BigReal d;
    BigReal d_mag;
    if (j == 1) {
      d = d_bound - 1;
      d_mag = d_bound + 1;
    } else {
      d = l * (c - c_prev);
      d_mag = l * (c + c_prev);
    }
    BigReal p = rj;  // (j l)^n q^(jx)
    for (std::size_t n = 0; n < width; ++n) {
      sum[n] += d * p;
      magnitude[n] += d_mag * p;
      p *= jl;
    }
    if (j % 8 == 0 || j < 8) {
      // Tail after j: d_k <= l/(1-q), ratio of majorants ((k+1)/k)^n q^x, largest at k = j+1.
      bool done = true;
      const BigReal next_l = jl + l;
      BigReal majorant = d_bound * rj * r;  // n = 0 term at k = j+1
      const BigReal step = BigReal(j + 2) / (j + 1);
      BigReal rho = r;
      for (std::size_t n = 0; n < width; ++n) {
        if (rho < 1) {
          tail[n] = majorant / (1 - rho);
          if (tail[n] > tol * abs(sum[n])) done = false;
        } else {
          done = false;
        }
        majorant *= next_l;
        rho *= step;
      }
      if (done) break;
    }
    c_prev = c;
    one_minus_qj += qj * one_minus_q;
    qj *= q;
    rj *= r;
    jl += l;
  }
  std::vector<SeriesValue> out(width);
  for (std::size_t n = 0; n < width; ++n) {
    out[n].value = sum[n];
    out[n].tail_bound = tail[n] + u * magnitude[n] * (j + 8);
    out[n].terms_used = j;
  }
  return out;
}

SeriesValue phi_q(const BigReal& q, int n, const BigReal& x, const PrecisionConfig& cfg) {
  require_order(n, 0, "phi_q");
  return phi_q_derivatives(q, x, n, cfg)[static_cast<std::size_t>(n)];
}

SeriesValue phi_q_inv(const BigReal& q_in, const BigReal& x, const PrecisionConfig& cfg, int n) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal q = working_copy(q_in);
  if (!(q > 1 && q.is_finite())) throw DomainError("phi_q_inv: q must be > 1, got " + q.str(20));
  return phi_q(1 / q, n, x, cfg);
}

BigReal theta_q(const BigReal& q_in, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal q = working_copy(q_in);
  if (!(q > 0 && q < 1)) throw DomainError("theta_q: q must lie in (0, 1), got " + q.str(20));
  require_positive(x_in, "theta_q");
  const BigReal x = working_copy(x_in);
  const BigReal lq = log(q);
  // log q q^x/(q^x - 1) = -log q q^x / (1 - q^x)
  return -lq * exp(lq * x) / -expm1(lq * x);
}

Approx evaluate(const FunctionId& fid, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  fid.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal x = working_copy(x_in);
  const BigReal u = rounding_unit();
  auto from_series = [](const SeriesValue& s) { return Approx{s.value, s.tail_bound}; };
  auto exact_up_to_rounding = [&](BigReal v) {
    BigReal err = u * abs(v) * 8;
    return Approx{std::move(v), std::move(err)};
  };
  switch (fid.family) {
    case Family::PhiScaled:
      return phi_scaled_derivatives(fid.m, fid.alpha, x, 0, cfg)[0];
    case Family::PhiQ:
      return from_series(phi_q(fid.q, 0, x, cfg));
    case Family::PhiQInv:
      return from_series(phi_q_inv(fid.q, x, cfg));
    case Family::FAlphaLog:
      return f_alpha_log_derivs(fid.alpha, 0, x, cfg);
    case Family::FAlpha: {
      require_positive(x, "f_alpha");
      Approx th = theta1(x, cfg);
      const BigReal lx = log(x);
      BigReal v = exp(-((th.value + fid.alpha) * lx));
      BigReal err = abs(v) * (th.err * abs(lx) * 2 + u * 8);
      return {v, err};
    }
    case Family::Fm:
      return from_series(f_m(fid.m, x, cfg));
    case Family::Gm:
      return from_series(g_m_kernel(fid.m, x, cfg));
    case Family::ThetaM:
      return theta_m(fid.m, x, cfg);
    case Family::Theta1:
      return theta1(x, cfg);
    case Family::GnAux:
      return g_n_aux(fid.n_aux, x, cfg);
    case Family::KernelK1:
      return exact_up_to_rounding(kernel_K1(x, cfg));
    case Family::KernelK2:
      return exact_up_to_rounding(kernel_K2(x, cfg));
    case Family::KernelK3:
      return exact_up_to_rounding(kernel_K3(x, cfg));
    case Family::HLH:
      return from_series(hardy_littlewood_H(x, cfg));
    case Family::SFun:
      return from_series(s_function(x, cfg));
  }
  throw DomainError("evaluate: unknown family");
}

}  // namespace cmv
