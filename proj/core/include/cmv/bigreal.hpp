#pragma once

// Multiple-precision real numbers on top of MPFR.
//
// Every thread carries a working precision, expressed in significant decimal
// digits and changed only through PrecisionScope. New values and the results
// of arithmetic are rounded to the working precision of the calling thread;
// copies keep the precision of their source.

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cmv {

inline constexpr int kMinDigits = 30;
inline constexpr int kDefaultDigits = 50;

/// Working precision of the calling thread in decimal digits.
int working_digits() noexcept;

/// Working precision of the calling thread in bits.
mpfr_prec_t working_bits() noexcept;

/// Binary precision used for `digits` significant decimal digits.
mpfr_prec_t digits_to_bits(int digits) noexcept;

/// Sets the working precision of the current thread for its lifetime and
/// restores the previous one on exit. Throws DomainError for digits < 30.
class PrecisionScope {
 public:
  explicit PrecisionScope(int digits);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_digits_;
};

class BigReal {
 public:
  BigReal();
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  ~BigReal();

  template <std::integral I>
  BigReal(I v) : BigReal() {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<I>) {
      mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN);
    } else {
      mpfr_set_ui(v_, static_cast<unsigned long>(v), MPFR_RNDN);
    }
  }

  template <std::floating_point F>
  BigReal(F v) : BigReal() {  // NOLINT(google-explicit-constructor)
    mpfr_set_d(v_, static_cast<double>(v), MPFR_RNDN);
  }

  explicit BigReal(const mpq_class& q);
  explicit BigReal(const mpz_class& z);

  /// Parses a locale-independent decimal ("-1.25", "3e-7"). Throws ParseError.
  static BigReal parse(std::string_view text);

  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);

  BigReal operator-() const;

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);

  template <std::integral I>
  friend BigReal operator+(const BigReal& a, I b) { return a.add_si(static_cast<long>(b)); }
  template <std::integral I>
  friend BigReal operator+(I a, const BigReal& b) { return b.add_si(static_cast<long>(a)); }
  template <std::integral I>
  friend BigReal operator-(const BigReal& a, I b) { return a.add_si(-static_cast<long>(b)); }
  template <std::integral I>
  friend BigReal operator-(I a, const BigReal& b) { return (-b).add_si(static_cast<long>(a)); }
  template <std::integral I>
  friend BigReal operator*(const BigReal& a, I b) { return a.mul_si(static_cast<long>(b)); }
  template <std::integral I>
  friend BigReal operator*(I a, const BigReal& b) { return b.mul_si(static_cast<long>(a)); }
  template <std::integral I>
  friend BigReal operator/(const BigReal& a, I b) { return a.div_si(static_cast<long>(b)); }
  template <std::integral I>
  friend BigReal operator/(I a, const BigReal& b) { return b.si_div(static_cast<long>(a)); }

  template <std::floating_point F>
  friend BigReal operator+(const BigReal& a, F b) { return a + BigReal(b); }
  template <std::floating_point F>
  friend BigReal operator+(F a, const BigReal& b) { return BigReal(a) + b; }
  template <std::floating_point F>
  friend BigReal operator-(const BigReal& a, F b) { return a - BigReal(b); }
  template <std::floating_point F>
  friend BigReal operator-(F a, const BigReal& b) { return BigReal(a) - b; }
  template <std::floating_point F>
  friend BigReal operator*(const BigReal& a, F b) { return a * BigReal(b); }
  template <std::floating_point F>
  friend BigReal operator*(F a, const BigReal& b) { return BigReal(a) * b; }
  template <std::floating_point F>
  friend BigReal operator/(const BigReal& a, F b) { return a / BigReal(b); }
  template <std::floating_point F>
  friend BigReal operator/(F a, const BigReal& b) { return BigReal(a) / b; }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

  template <typename T>
    requires std::integral<T> || std::floating_point<T>
  friend bool operator==(const BigReal& a, T b) { return a == BigReal(b); }
  template <typename T>
    requires std::integral<T> || std::floating_point<T>
  friend std::partial_ordering operator<=>(const BigReal& a, T b) { return a <=> BigReal(b); }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; meaningless for zero.
  long exponent2() const noexcept { return mpfr_get_exp(v_); }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Shortest decimal text that parses back to this exact value at this
  /// value's precision.
  std::string str() const;

  /// Decimal text with at most `significant` significant digits, trailing
  /// zeros removed.
  std::string str(int significant) const;

  mpfr_ptr raw() noexcept { return v_; }
  mpfr_srcptr raw() const noexcept { return v_; }

 private:
  BigReal add_si(long b) const;
  BigReal mul_si(long b) const;
  BigReal div_si(long b) const;
  BigReal si_div(long a) const;

  mpfr_t v_;
};

/// x rounded to the calling thread's working precision.
BigReal working_copy(const BigReal& x);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal expm1(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log1p(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& exponent);
BigReal pow(const BigReal& base, long exponent);
BigReal ldexp(const BigReal& x, long e);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);

BigReal pi();
BigReal euler_gamma();
BigReal factorial(unsigned long n);

/// 10^(1-P): the per-operation relative rounding bound at working precision.
BigReal rounding_unit();

/// 10^e at working precision.
BigReal pow10(long e);

}  // namespace cmv
