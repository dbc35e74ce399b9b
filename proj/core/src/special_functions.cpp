#include "cmv/special_functions.hpp"

#include <cmath>
#include <string>

#include "cmv/bernoulli.hpp"
#include "cmv/errors.hpp"

namespace cmv {

namespace {

void require_positive(const BigReal& x, const char* fn) {
  if (!x.is_finite() || x <= 0) {
    throw DomainError(std::string(fn) + ": argument must be > 0, got " + x.str(20));
  }
}

// Shift point for the asymptotic polygamma series; 2*pi*x0 comfortably exceeds
// P*ln(10) + order, which is where the series stops shrinking.
double asymptotic_threshold(int digits, int order) { return 10.0 + digits / 2.0 + 2.0 * order; }

constexpr int kMaxAsymptoticTerms = 2000;

}  // namespace

Approx polygamma_approx(int n, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  if (n < 0) throw DomainError("polygamma: order must be >= 0, got " + std::to_string(n));
  require_positive(x_in, "polygamma");

  const BigReal tol = cfg.series_tol();
  const BigReal u = rounding_unit();
  BigReal y = working_copy(x_in);

  // psi^(n)(x) = psi^(n)(x + N) - (-1)^n n! sum_{i<N} (x+i)^-(n+1)
  BigReal shift_sum;
  long steps = 0;
  const double x0 = asymptotic_threshold(cfg.digits, n);
  if (y < x0) {
    const long count = static_cast<long>(std::ceil(x0 - y.to_double()));
    for (long i = 0; i < count; ++i) {
      shift_sum += pow(y, -static_cast<long>(n + 1));
      y += 1;
    }
    steps = count;
  }

  const BigReal inv = 1 / y;
  const BigReal inv2 = inv * inv;
  BigReal at_y;
  BigReal truncation;
  long terms = 0;
  BigReal previous_magnitude;
  if (n == 0) {
    // psi(y) = log y - 1/(2y) - sum_k B_2k / (2k y^2k)
    const BigReal lead = log(y) - inv / 2;
    BigReal series;
    BigReal power = inv2;
    for (int k = 1;; ++k) {
      if (k > kMaxAsymptoticTerms) throw PrecisionError("polygamma: asymptotic series did not converge");
      BigReal term = bernoulli(2 * k) / (2 * k) * power;
      BigReal magnitude = abs(term);
      if (magnitude <= tol * abs(lead)) {
        truncation = magnitude;
        terms = k;
        break;
      }
      if (k > 1 && magnitude >= previous_magnitude) {
        throw PrecisionError("polygamma: asymptotic series diverged before reaching tolerance");
      }
      previous_magnitude = magnitude;
      series += term;
      power *= inv2;
    }
    at_y = lead - series;
  } else {
    // (-1)^(n+1) psi^(n)(y) = (n-1)!/y^n [1 + n/(2y) + sum_k B_2k/(2k)! (2k+n-1)!/(n-1)! y^-2k]
    BigReal sum = 1 + BigReal(n) * inv / 2;
    BigReal rising = BigReal(n) * (n + 1);  // (2k+n-1)!/(n-1)! at k = 1
    BigReal power = inv2;
    for (int k = 1;; ++k) {
      if (k > kMaxAsymptoticTerms) throw PrecisionError("polygamma: asymptotic series did not converge");
      BigReal term = bernoulli_over_factorial(2 * k) * rising * power;
      BigReal magnitude = abs(term);
      if (magnitude <= tol * abs(sum)) {
        truncation = magnitude;
        terms = k;
        break;
      }
      if (k > 1 && magnitude >= previous_magnitude) {
        throw PrecisionError("polygamma: asymptotic series diverged before reaching tolerance");
      }
      previous_magnitude = magnitude;
      sum += term;
      rising *= BigReal(2 * k + n) * (2 * k + n + 1);
      power *= inv2;
    }
    const BigReal scale = factorial(static_cast<unsigned long>(n - 1)) * pow(inv, static_cast<long>(n));
    at_y = (n % 2 == 1 ? scale : -scale) * sum;
    truncation *= scale;
  }

  const BigReal nfact = factorial(static_cast<unsigned long>(n));
  const BigReal shift_part = nfact * shift_sum;
  Approx out;
  out.value = (n % 2 == 0) ? at_y - shift_part : at_y + shift_part;
  out.err = truncation + u * (abs(at_y) * (terms + 4) + shift_part * (steps + 2));
  return out;
}

BigReal polygamma(int n, const BigReal& x, const PrecisionConfig& cfg) {
  return polygamma_approx(n, x, cfg).value;
}

SeriesValue hurwitz_zeta(int s, const BigReal& a_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  if (s < 2) throw DomainError("zeta: s must be >= 2, got " + std::to_string(s));
  require_positive(a_in, "hurwitz_zeta");

  const BigReal tol = cfg.series_tol();
  const BigReal u = rounding_unit();
  BigReal y = working_copy(a_in);
  BigReal direct;
  long direct_terms = 0;

  auto sum_direct_until = [&](double limit) {
    while (y < limit) {
      direct += pow(y, -static_cast<long>(s));
      y += 1;
      if (++direct_terms > cfg.max_terms) {
        throw PrecisionError("zeta: direct summation exceeded max_terms");
      }
    }
  };

  sum_direct_until(0.37 * cfg.digits + 5.0);

  // Euler-Maclaurin tail at y: y^(1-s)/(s-1) + y^-s/2 + sum_j B_2j/(2j)! (s)_(2j-1) y^(-s-2j+1).
  // For t^-s every derivative alternates in sign, so the first omitted term
  // bounds the remainder.
  for (int attempt = 0; attempt < 64; ++attempt) {
    const BigReal w = pow(y, static_cast<long>(1 - s));
    const BigReal inv = 1 / y;
    const BigReal inv2 = inv * inv;
    BigReal tail = w / (s - 1) + w * inv / 2;
    BigReal rising = BigReal(s);  // (s)_(2j-1) at j = 1
    BigReal power = w * inv2;     // y^(-s-2j+1) at j = 1
    BigReal previous;
    bool converged = false;
    BigReal omitted;
    long em_terms = 0;
    for (int j = 1; j <= kMaxAsymptoticTerms; ++j) {
      BigReal term = bernoulli_over_factorial(2 * j) * rising * power;
      BigReal magnitude = abs(term);
      if (magnitude <= tol * abs(direct + tail)) {
        omitted = magnitude;
        em_terms = j;
        converged = true;
        break;
      }
      if (j > 1 && magnitude >= previous) break;
      previous = magnitude;
      tail += term;
      rising *= BigReal(s + 2 * j - 1) * (s + 2 * j);
      power *= inv2;
    }
    if (converged) {
      SeriesValue out;
      out.value = direct + tail;
      out.tail_bound = omitted + u * abs(out.value) * (direct_terms + em_terms + 4);
      out.terms_used = direct_terms + em_terms;
      return out;
    }
    const double yd = y.to_double();
    sum_direct_until(yd + (yd < 10.0 ? 10.0 : yd));
  }
  throw PrecisionError("zeta: Euler-Maclaurin tail did not converge");
}

BigReal zeta(int s, const PrecisionConfig& cfg) {
  PrecisionScope scope(cfg.digits);
  return hurwitz_zeta(s, BigReal(1), cfg).value;
}

LaguerrePair laguerre_with_derivative(int m, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  if (m < 0) throw DomainError("laguerre: degree must be >= 0, got " + std::to_string(m));
  const BigReal x = working_copy(x_in);
  BigReal prev = 1;       // L_0
  BigReal cur = 1 - x;    // L_1
  BigReal deriv_sum = 0;  // sum_{k<m} L_k
  if (m == 0) return {BigReal(1), BigReal(0)};
  deriv_sum += prev;
  for (int k = 1; k < m; ++k) {
    // (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}
    BigReal next = ((2 * k + 1 - x) * cur - k * prev) / (k + 1);
    deriv_sum += cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  if (!cur.is_finite()) throw PrecisionError("laguerre: overflow at degree " + std::to_string(m));
  return {cur, -deriv_sum};
}

BigReal laguerre(int m, const BigReal& x, const PrecisionConfig& cfg) {
  return laguerre_with_derivative(m, x, cfg).value;
}

SeriesValue hardy_littlewood_H(const BigReal& z_in, const PrecisionConfig& cfg, long explicit_terms) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal z = working_copy(z_in);
  if (!z.is_finite()) throw DomainError("H: argument must be finite");
  SeriesValue out;
  if (z.is_zero()) {
    out.value = 0;
    out.tail_bound = 0;
    return out;
  }
  const double az = std::fabs(z.to_double());
  long K = explicit_terms > 0 ? explicit_terms : static_cast<long>(std::ceil(az / 6.0));
  if (K < 30) K = explicit_terms > 0 ? K : 30;
  if (K > cfg.max_terms) {
    throw PrecisionError("H: needs " + std::to_string(K) + " terms, above max_terms");
  }
  if (az / static_cast<double>(K) > 20.0) {
    throw PrecisionError("H: " + std::to_string(K) + " explicit terms are too few for |z| = " +
                         std::to_string(az));
  }

  const BigReal tol = cfg.series_tol();
  const BigReal u = rounding_unit();

  BigReal head;
  BigReal head_abs;
  for (long k = 1; k <= K; ++k) {
    BigReal term = sin(z / k) / k;
    head_abs += abs(term);
    head += term;
  }

  // sum_{k>K} sin(z/k)/k = sum_j (-1)^j z^(2j+1)/(2j+1)! zeta(2j+2, K+1)
  const BigReal a = BigReal(K + 1);
  const BigReal z2 = z * z;
  const double ratio2 = (az / K) * (az / K);
  BigReal coeff = z;  // z^(2j+1)/(2j+1)!
  BigReal tail;
  BigReal tail_abs;
  BigReal hurwitz_err;
  long j = 0;
  BigReal next_bound;
  for (;; ++j) {
    if (j > 5000) throw PrecisionError("H: tail expansion did not converge");
    SeriesValue hz = hurwitz_zeta(static_cast<int>(2 * j + 2), a, cfg);
    BigReal term = coeff * hz.value;
    if (j % 2 == 1) term = -term;
    tail += term;
    tail_abs += abs(term);
    hurwitz_err += abs(coeff) * hz.tail_bound;
    // |term_{j+1}| <= |term_j| (z/K)^2 / ((2j+2)(2j+3)) since zeta(s+2, K+1) <= zeta(s, K+1)/K^2.
    const double shrink = ratio2 / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
    if (shrink < 1.0) {
      next_bound = abs(term) * BigReal(shrink);
      if (next_bound <= tol) break;
    }
    coeff *= z2 / ((2 * j + 2) * (2 * j + 3));
  }

  out.value = head + tail;
  out.tail_bound = next_bound + hurwitz_err + u * (head_abs + tail_abs) * 4;
  out.terms_used = K + j + 1;
  return out;
}

SeriesValue s_function(const BigReal& z_in, const PrecisionConfig& cfg, long explicit_terms) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal p = pi();
  SeriesValue h = hardy_littlewood_H(working_copy(z_in) / (2 * p), cfg, explicit_terms);
  SeriesValue out;
  out.value = BigReal(1) / 2 + h.value / p;
  out.tail_bound = h.tail_bound / p + rounding_unit() * abs(out.value);
  out.terms_used = h.terms_used;
  out.estimated = h.estimated;
  return out;
}

SeriesValue q_trigamma_series(const BigReal& q_in, const BigReal& x_in, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal q = working_copy(q_in);
  if (!(q > 0 && q < 1)) throw DomainError("q_trigamma: q must lie in (0, 1), got " + q.str(20));
  require_positive(x_in, "q_trigamma");
  const BigReal x = working_copy(x_in);

  const BigReal tol = cfg.series_tol();
  const BigReal lq = log(q);
  const BigReal qx = exp(x * lq);
  BigReal qkx = qx;  // q^(kx)
  BigReal qk = q;    // q^k
  BigReal sum;
  BigReal tail;
  long k = 1;
  for (;; ++k) {
    if (k > cfg.max_terms) throw PrecisionError("q_trigamma: series exceeded max_terms");
    BigReal one_minus = qk > 0.5 ? -expm1(lq * k) : 1 - qk;
    BigReal term = k * qkx / one_minus;
    sum += term;
    // term_{k+1}/term_k = (k+1)/k q^x (1-q^k)/(1-q^(k+1)) <= (1 + 1/k) q^x, and the bound shrinks with k.
    BigReal ratio = qx * (k + 1) / k;
    if (ratio < 1) {
      tail = term * ratio / (1 - ratio);
      if (tail <= tol * sum) break;
    }
    qkx *= qx;
    qk *= q;
  }
  const BigReal l2 = lq * lq;
  SeriesValue out;
  out.value = l2 * sum;
  out.tail_bound = l2 * tail + rounding_unit() * abs(out.value) * 4 * k;
  out.terms_used = k;
  return out;
}

BigReal q_trigamma(const BigReal& q, const BigReal& x, const PrecisionConfig& cfg) {
  return q_trigamma_series(q, x, cfg).value;
}

}  // namespace cmv
