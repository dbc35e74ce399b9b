#include "cmv/bigreal.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

thread_local int t_digits = kDefaultDigits;
thread_local mpfr_prec_t t_bits = digits_to_bits(kDefaultDigits);

}  // namespace

mpfr_prec_t digits_to_bits(int digits) noexcept {
  // log2(10) = 3.3219...; four guard bits keep the decimal bound honest.
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 4;
}

int working_digits() noexcept { return t_digits; }

mpfr_prec_t working_bits() noexcept { return t_bits; }

PrecisionScope::PrecisionScope(int digits) : saved_digits_(t_digits) {
  if (digits < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) +
                      " digits, got " + std::to_string(digits));
  }
  t_digits = digits;
  t_bits = digits_to_bits(digits);
}

PrecisionScope::~PrecisionScope() {
  t_digits = saved_digits_;
  t_bits = digits_to_bits(saved_digits_);
}

BigReal::BigReal() {
  mpfr_init2(v_, t_bits);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
  v_[0] = other.v_[0];
  other.v_[0]._mpfr_d = nullptr;
}

BigReal::~BigReal() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

BigReal::BigReal(const mpq_class& q) : BigReal() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }

BigReal::BigReal(const mpz_class& z) : BigReal() { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }

BigReal BigReal::parse(std::string_view text) {
  std::string s(text);
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && is_space(s[start])) ++start;
  s.erase(0, start);
  if (s.empty()) throw ParseError("empty decimal");
  // Only plain decimals: MPFR would also accept "inf", "nan", "@" exponents and hex.
  for (char c : s) {
    bool ok = (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E';
    if (!ok) throw ParseError("not a decimal number: '" + s + "'");
  }
  BigReal r;
  char* end = nullptr;
  mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0') throw ParseError("not a decimal number: '" + s + "'");
  return r;
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this == &other) return *this;
  if (v_[0]._mpfr_d == nullptr) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
  } else if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) std::swap(v_[0], other.v_[0]);
  return *this;
}

BigReal& BigReal::operator+=(const BigReal& o) {
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal BigReal::operator-() const {
  BigReal r;
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  BigReal r;
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigReal BigReal::add_si(long b) const {
  BigReal r;
  mpfr_add_si(r.v_, v_, b, MPFR_RNDN);
  return r;
}

BigReal BigReal::mul_si(long b) const {
  BigReal r;
  mpfr_mul_si(r.v_, v_, b, MPFR_RNDN);
  return r;
}

BigReal BigReal::div_si(long b) const {
  BigReal r;
  mpfr_div_si(r.v_, v_, b, MPFR_RNDN);
  return r;
}

BigReal BigReal::si_div(long a) const {
  BigReal r;
  mpfr_si_div(r.v_, a, v_, MPFR_RNDN);
  return r;
}

namespace {

// Formats MPFR's digit string d1 d2 ... dn (value 0.d1d2...dn x 10^exp10).
std::string format_digits(std::string digits, mpfr_exp_t exp10, bool negative) {
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = negative ? "-" : "";
  const long n = static_cast<long>(digits.size());
  if (exp10 > 0 && exp10 <= 30) {
    if (n <= exp10) {
      out += digits + std::string(static_cast<std::size_t>(exp10 - n), '0');
    } else {
      out += digits.substr(0, static_cast<std::size_t>(exp10)) + "." +
             digits.substr(static_cast<std::size_t>(exp10));
    }
  } else if (exp10 <= 0 && exp10 > -6) {
    out += "0." + std::string(static_cast<std::size_t>(-exp10), '0') + digits;
  } else {
    out += digits.substr(0, 1);
    if (n > 1) out += "." + digits.substr(1);
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  }
  return out;
}

std::string to_text(mpfr_srcptr v, std::size_t significant) {
  if (mpfr_nan_p(v)) return "nan";
  if (mpfr_inf_p(v)) return mpfr_sgn(v) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, significant, v, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  bool negative = false;
  if (!digits.empty() && digits[0] == '-') {
    negative = true;
    digits.erase(0, 1);
  }
  return format_digits(std::move(digits), exp10, negative);
}

}  // namespace

std::string BigReal::str() const {
  const std::size_t full = mpfr_get_str_ndigits(10, mpfr_get_prec(v_));
  if (!mpfr_number_p(v_) || mpfr_zero_p(v_)) return to_text(v_, full);
  // Round-tripping is monotone in the digit count, so bisect for the shortest.
  mpfr_t back;
  mpfr_init2(back, mpfr_get_prec(v_));
  auto round_trips = [&](std::size_t digits) {
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, digits, v_, MPFR_RNDN);
    std::string text(raw);
    mpfr_free_str(raw);
    const bool negative = text[0] == '-';
    if (negative) text.erase(0, 1);
    text = std::string(negative ? "-" : "") + "0." + text + "e" + std::to_string(static_cast<long>(exp10));
    mpfr_set_str(back, text.c_str(), 10, MPFR_RNDN);
    return mpfr_equal_p(back, v_) != 0;
  };
  std::size_t lo = 1;
  std::size_t hi = full;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (round_trips(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  mpfr_clear(back);
  return to_text(v_, hi);
}

std::string BigReal::str(int significant) const {
  return to_text(v_, static_cast<std::size_t>(significant < 1 ? 1 : significant));
}

BigReal working_copy(const BigReal& x) {
  BigReal r;
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

#define CMV_UNARY(name, fn)              \
  BigReal name(const BigReal& x) {       \
    BigReal r;                           \
    fn(r.raw(), x.raw(), MPFR_RNDN);     \
    return r;                            \
  }

CMV_UNARY(abs, mpfr_abs)
CMV_UNARY(sqrt, mpfr_sqrt)
CMV_UNARY(exp, mpfr_exp)
CMV_UNARY(expm1, mpfr_expm1)
CMV_UNARY(log, mpfr_log)
CMV_UNARY(log1p, mpfr_log1p)
CMV_UNARY(sin, mpfr_sin)
CMV_UNARY(cos, mpfr_cos)
CMV_UNARY(sinh, mpfr_sinh)
CMV_UNARY(cosh, mpfr_cosh)

#undef CMV_UNARY

BigReal pow(const BigReal& base, const BigReal& exponent) {
  BigReal r;
  mpfr_pow(r.raw(), base.raw(), exponent.raw(), MPFR_RNDN);
  return r;
}

BigReal pow(const BigReal& base, long exponent) {
  BigReal r;
  mpfr_pow_si(r.raw(), base.raw(), exponent, MPFR_RNDN);
  return r;
}

BigReal ldexp(const BigReal& x, long e) {
  BigReal r;
  mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
  return r;
}

BigReal floor(const BigReal& x) {
  BigReal r;
  mpfr_floor(r.raw(), x.raw());
  return r;
}

BigReal ceil(const BigReal& x) {
  BigReal r;
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

BigReal pi() {
  BigReal r;
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigReal euler_gamma() {
  BigReal r;
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

BigReal factorial(unsigned long n) {
  BigReal r;
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

BigReal rounding_unit() { return pow10(1 - working_digits()); }

BigReal pow10(long e) {
  BigReal r;
  mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.raw(), 1, r.raw(), MPFR_RNDN);
  return r;
}

}  // namespace cmv
