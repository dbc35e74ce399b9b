#include "cmv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

// Abscissa range where tanh-sinh weights are still above 10^-(P+10).
double tanh_sinh_extent(int digits) {
  return std::asinh((digits + 10) * std::log(10.0) / M_PI);
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, const BigReal& a_in, const BigReal& b_in, const BigReal& tol,
                           int max_level) {
  const BigReal a = working_copy(a_in);
  const BigReal b = working_copy(b_in);
  QuadratureResult out;
  if (a == b) return out;
  if (!(a < b)) throw DomainError("integrate: need a <= b");

  const BigReal half_pi = pi() / 2;
  const BigReal d = (b - a) / 2;
  const BigReal c = (a + b) / 2;
  const BigReal u = rounding_unit();
  const double extent = tanh_sinh_extent(working_digits());

  BigReal abs_sum;
  // Weighted sum over nodes k*h for k in `ks` (k = 0 is the midpoint).
  auto node_sum = [&](const BigReal& h, long k_begin, long k_step, long k_end) {
    BigReal s;
    for (long k = k_begin; k <= k_end; k += k_step) {
      const BigReal t = h * k;
      if (k == 0) {
        BigReal fx = f(c);
        BigReal term = half_pi * fx;
        abs_sum += abs(term) * h;
        s += term;
        ++out.evaluations;
        continue;
      }
      const BigReal sh = half_pi * sinh(t);
      const BigReal ch = cosh(sh);
      const BigReal weight = half_pi * cosh(t) / (ch * ch);
      // Distance of the node from the nearer endpoint: d (1 - tanh(sh)) = 2d / (e^(2 sh) + 1).
      const BigReal dist = 2 * d / (exp(2 * sh) + 1);
      BigReal left = f(a + dist);
      BigReal right = f(b - dist);
      out.evaluations += 2;
      BigReal term = weight * (left + right);
      abs_sum += weight * (abs(left) + abs(right)) * h;
      s += term;
    }
    return s;
  };

  BigReal h = BigReal(1) / 2;
  long k_end = static_cast<long>(std::ceil(extent / h.to_double()));
  BigReal sum = node_sum(h, 0, 1, k_end);
  BigReal estimate = sum * h * d;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    k_end = static_cast<long>(std::ceil(extent / h.to_double()));
    sum += node_sum(h, 1, 2, k_end);
    BigReal next = sum * h * d;
    BigReal diff = abs(next - estimate);
    estimate = std::move(next);
    BigReal rounding = u * abs_sum * abs(d) * 8;
    // A target below the rounding level is met once the levels agree to rounding.
    if (level >= 2 && diff <= max(tol, rounding)) {
      out.value = estimate;
      out.err = diff + rounding;
      return out;
    }
  }
  throw PrecisionError("integrate: no convergence after " + std::to_string(max_level) + " levels");
}

QuadratureResult laplace_transform(const RealFunction& f, const BigReal& x_in, const std::function<BigReal(const BigReal&)>& tail,
                                   const BigReal& tol) {
  const BigReal x = working_copy(x_in);
  if (!(x > 0)) throw DomainError("laplace_transform: x must be > 0, got " + x.str(20));
  const BigReal panel = 1 / x;
  BigReal T = panel;
  int panels = 1;
  BigReal tail_value = tail(T);
  while (tail_value > tol / 2) {
    T *= 2;
    ++panels;
    if (panels > 200) throw PrecisionError("laplace_transform: tail bound does not decay");
    tail_value = tail(T);
  }
  const BigReal panel_tol = tol / (2 * panels);
  auto integrand = [&](const BigReal& t) { return f(t) * exp(-(x * t)); };
  QuadratureResult out;
  BigReal lo = 0;
  BigReal hi = panel;
  for (int i = 0; i < panels; ++i) {
    QuadratureResult part = integrate(integrand, lo, hi, panel_tol);
    out.value += part.value;
    out.err += part.err;
    out.evaluations += part.evaluations;
    lo = hi;
    hi *= 2;
  }
  out.err += tail_value;
  return out;
}

FiniteDifference fd_derivative(const ConfiguredFunction& f, int n, const BigReal& x_in, const PrecisionConfig& cfg,
                               int max_digits) {
  if (n < 0) throw DomainError("fd_derivative: order must be >= 0");
  int digits = cfg.digits;
  FiniteDifference out;
  for (;;) {
    PrecisionConfig local = cfg;
    local.digits = digits;
    local.series_tol_exponent = std::min(cfg.series_tol_exponent, -static_cast<double>(digits));
    PrecisionScope scope(digits);
    const BigReal x = working_copy(x_in);
    const BigReal u = rounding_unit();
    out.digits = digits;
    if (n == 0) {
      out.value = f(x, local);
      out.err = u * abs(out.value);
      out.converged = true;
      return out;
    }
    const double shrink = -static_cast<double>(digits) / (2.0 * (n + 1));
    const BigReal h0 = min(x, BigReal(1)) * pow(BigReal(10), BigReal(shrink));
    constexpr int kLevels = 4;
    std::vector<std::vector<BigReal>> table(kLevels);
    BigReal rounding;
    for (int level = 0; level < kLevels; ++level) {
      const BigReal h = ldexp(h0, -level);
      BigReal acc;
      BigReal acc_abs;
      for (int i = 0; i <= n; ++i) {
        const BigReal offset = h * (BigReal(n) / 2 - i);
        BigReal fi = f(x + offset, local);
        BigReal term = binomial(n, i) * fi;
        acc_abs += abs(term);
        if (i % 2 == 0) acc += term; else acc -= term;
      }
      const BigReal hn = pow(h, static_cast<long>(n));
      table[level].push_back(acc / hn);
      if (level == kLevels - 1) rounding = u * acc_abs / hn * 4;
      for (int j = 1; j <= level; ++j) {
        const BigReal factor = pow(BigReal(4), static_cast<long>(j)) - 1;
        table[level].push_back(table[level][j - 1] + (table[level][j - 1] - table[level - 1][j - 1]) / factor);
      }
    }
    out.value = table[kLevels - 1][kLevels - 1];
    out.err = abs(out.value - table[kLevels - 1][kLevels - 2]) + rounding;
    out.converged = out.err * 10 < abs(out.value);
    if (out.converged || digits * 2 > max_digits) return out;
    digits *= 2;
  }
}

Extrapolation extrapolate_to_zero(const std::vector<BigReal>& h, const std::vector<BigReal>& y) {
  if (h.size() != y.size() || h.size() < 2) {
    throw DomainError("extrapolate_to_zero: need at least two matching samples");
  }
  const std::size_t count = h.size();
  // Neville tableau; row i uses samples up to i, column j the last j+1 of them.
  std::vector<BigReal> column(y);
  std::vector<BigReal> estimates{y.back()};
  for (std::size_t j = 1; j < count; ++j) {
    std::vector<BigReal> next(count);
    for (std::size_t i = j; i < count; ++i) {
      next[i] = column[i] + (column[i] - column[i - 1]) * h[i] / (h[i - j] - h[i]);
    }
    column = std::move(next);
    estimates.push_back(column[count - 1]);
  }
  Extrapolation out;
  std::size_t best = 1;
  BigReal best_diff = abs(estimates[1] - estimates[0]);
  for (std::size_t j = 2; j < estimates.size(); ++j) {
    BigReal diff = abs(estimates[j] - estimates[j - 1]);
    if (diff < best_diff) {
      best_diff = diff;
      best = j;
    }
  }
  if (!best_diff.is_finite()) throw PrecisionError("extrapolate_to_zero: tableau diverged");
  out.value = estimates[best];
  out.err = best_diff;
  return out;
}

BigReal falling_factorial(const BigReal& a, int k) {
  BigReal r = 1;
  for (int i = 0; i < k; ++i) r *= a - i;
  return r;
}

BigReal binomial(int n, int k) {
  if (k < 0 || k > n) return BigReal(0);
  BigReal r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

}  // namespace cmv
