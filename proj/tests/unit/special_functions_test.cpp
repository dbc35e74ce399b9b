#include <gtest/gtest.h>

#include <cmath>

#include "cmv/errors.hpp"
#include "cmv/special_functions.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cmv;
using cmv::testing::Rng;

namespace {

const PrecisionConfig kCfg = PrecisionConfig::with_digits(50);

BigReal rel_diff(const BigReal& a, const BigReal& b) { return abs(a - b) / abs(b); }

// H(z) = sum_j (-1)^j z^(2j+1) zeta(2j+2)/(2j+1)!, fine for |z| <= 5 at 50 digits.
BigReal h_zeta_series(const BigReal& z) {
  BigReal sum = 0;
  BigReal term = z;  // z^(2j+1)/(2j+1)!
  for (int j = 0; j < 200; ++j) {
    BigReal t = term * cmv::testing::mpfr_zeta(static_cast<unsigned long>(2 * j + 2));
    sum += (j % 2 == 0) ? t : -t;
    term = term * z * z / ((2 * j + 2) * (2 * j + 3));
  }
  return sum;
}

}  // namespace

TEST(Polygamma, TrigammaAtOneIsZetaTwo) {
  PrecisionScope scope(50);
  BigReal v = polygamma(1, BigReal(1), kCfg);
  EXPECT_LT(abs(v - pi() * pi() / 6), pow10(-48));
  EXPECT_LT(abs(v - cmv::testing::brute_trigamma(BigReal(1))), pow10(-30));
}

TEST(Polygamma, DigammaAtOneIsMinusEulerGamma) {
  PrecisionScope scope(50);
  EXPECT_LT(abs(polygamma(0, BigReal(1), kCfg) + euler_gamma()), pow10(-48));
}

TEST(Polygamma, MatchesMpfrDigammaAtRandomPoints) {
  PrecisionScope scope(50);
  Rng rng(21);
  for (int i = 0; i < 60; ++i) {
    BigReal x = rng.log_decimal(1e-3, 1e4);
    BigReal want = cmv::testing::mpfr_psi(x);
    EXPECT_LT(abs(polygamma(0, x, kCfg) - want), pow10(-46) * max(BigReal(1), abs(want))) << x.str();
  }
}

TEST(Polygamma, MatchesZetaValuesAtIntegersAndHalfIntegers) {
  PrecisionScope scope(50);
  for (int n = 1; n <= 10; ++n) {
    for (long k : {1L, 2L, 7L, 30L}) {
      BigReal want = cmv::testing::polygamma_at_integer(n, k);
      EXPECT_LT(rel_diff(polygamma(n, BigReal(k), kCfg), want), pow10(-45)) << "n=" << n << " k=" << k;
    }
    // psi^(n)(1/2) = (-1)^(n+1) n! (2^(n+1) - 1) zeta(n+1)
    BigReal half = factorial(static_cast<unsigned long>(n)) * (pow(BigReal(2), static_cast<long>(n + 1)) - 1) *
                   cmv::testing::mpfr_zeta(static_cast<unsigned long>(n + 1));
    if (n % 2 == 0) half = -half;
    EXPECT_LT(rel_diff(polygamma(n, BigReal(1) / 2, kCfg), half), pow10(-45)) << "n=" << n;
  }
}

TEST(Polygamma, TrigammaMatchesBruteForceSum) {
  PrecisionScope scope(40);
  Rng rng(22);
  for (int i = 0; i < 5; ++i) {
    BigReal x = rng.log_decimal(0.05, 50);
    EXPECT_LT(rel_diff(polygamma(1, x, PrecisionConfig::with_digits(40)), cmv::testing::brute_trigamma(x, 20000)),
              pow10(-25))
        << x.str();
  }
}

TEST(Polygamma, RecurrenceHoldsOnRandomSamples) {
  // psi^(m)(x+1) - psi^(m)(x) = (-1)^m m!/x^(m+1); series_tol is relative, so
  // the allowance scales with the operands.
  PrecisionScope scope(50);
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    int m = rng.integer(0, 10);
    BigReal x = rng.log_decimal(0.1, 100);
    BigReal a = polygamma(m, x + 1, kCfg);
    BigReal b = polygamma(m, x, kCfg);
    BigReal want = factorial(static_cast<unsigned long>(m)) / pow(x, static_cast<long>(m + 1));
    if (m % 2 == 1) want = -want;
    BigReal allowed = 10 * kCfg.series_tol() * (abs(a) + abs(b) + 1);
    EXPECT_LE(abs((a - b) - want), allowed) << "seed " << rng.seed() << " m=" << m << " x=" << x.str();
  }
}

TEST(Polygamma, SharpBracketOnLogGrid) {
  PrecisionScope scope(50);
  for (int n = 1; n <= 8; ++n) {
    for (int i = 0; i <= 40; ++i) {
      BigReal x = pow(BigReal(10), BigReal(-1) + BigReal(4 * i) / 40);
      BigReal v = polygamma(n, x, kCfg);
      if (n % 2 == 0) v = -v;
      BigReal lead = factorial(static_cast<unsigned long>(n - 1)) / pow(x, static_cast<long>(n));
      BigReal nf = factorial(static_cast<unsigned long>(n)) / pow(x, static_cast<long>(n + 1));
      EXPECT_GE(v, lead + nf / 2) << "n=" << n << " x=" << x.str(10);
      EXPECT_LE(v, lead + nf) << "n=" << n << " x=" << x.str(10);
    }
  }
}

TEST(Polygamma, SignAlternatesWithOrder) {
  PrecisionScope scope(50);
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    int n = rng.integer(1, 12);
    BigReal x = rng.log_decimal(1e-3, 1e5);
    EXPECT_EQ(polygamma(n, x, kCfg).sign(), n % 2 == 1 ? 1 : -1);
  }
}

TEST(Polygamma, RejectsNonPositiveArgument) {
  EXPECT_THROW(polygamma(1, BigReal(0), kCfg), DomainError);
  EXPECT_THROW(polygamma(0, BigReal(-2), kCfg), DomainError);
  EXPECT_THROW(polygamma(-1, BigReal(1), kCfg), DomainError);
}

TEST(Zeta, IntegerValues) {
  PrecisionScope scope(50);
  EXPECT_LT(abs(zeta(2, kCfg) - pi() * pi() / 6), pow10(-48));
  EXPECT_LT(abs(zeta(3, kCfg) - BigReal::parse("1.2020569031595942853997381615114499907649862923405")), pow10(-48));
  for (int s = 2; s <= 40; ++s)
    EXPECT_LT(abs(zeta(s, kCfg) - cmv::testing::mpfr_zeta(static_cast<unsigned long>(s))), pow10(-48)) << s;
}

TEST(Zeta, ApproachesOneMonotonically) {
  PrecisionScope scope(50);
  BigReal z20 = zeta(20, kCfg);
  EXPECT_GT(z20, 1);
  EXPECT_LT(z20, 1 + BigReal(2) / 1000000);
  // 1 + 2^-20 + 3^-20 plus tail <= integral_3^inf t^-20 dt
  BigReal lower = 1 + pow(BigReal(2), -20L) + pow(BigReal(3), -20L);
  EXPECT_GT(z20, lower);
  EXPECT_LT(z20, lower + pow(BigReal(3), -19L) / 19);
  for (int s = 2; s < 40; ++s) EXPECT_GT(zeta(s, kCfg), zeta(s + 1, kCfg));
  EXPECT_THROW(zeta(1, kCfg), DomainError);
}

TEST(HurwitzZeta, ShiftAndEndpoint) {
  PrecisionScope scope(50);
  Rng rng(25);
  for (int i = 0; i < 40; ++i) {
    int s = rng.integer(2, 12);
    BigReal a = rng.log_decimal(0.01, 50);
    SeriesValue z0 = hurwitz_zeta(s, a, kCfg);
    SeriesValue z1 = hurwitz_zeta(s, a + 1, kCfg);
    EXPECT_GE(z0.tail_bound, 0);
    EXPECT_LE(z0.terms_used, kCfg.max_terms);
    EXPECT_LT(rel_diff(z0.value - z1.value, pow(a, -static_cast<long>(s))), pow10(-40));
  }
  EXPECT_LT(rel_diff(hurwitz_zeta(5, BigReal(1), kCfg).value, cmv::testing::mpfr_zeta(5)), pow10(-45));
}

TEST(Laguerre, LowOrdersAndExplicitFormula) {
  PrecisionScope scope(50);
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    BigReal x = rng.decimal(-5, 60);
    EXPECT_EQ(laguerre(0, x, kCfg), 1);
    EXPECT_LT(abs(laguerre(1, x, kCfg) - (1 - x)), pow10(-45) * (1 + abs(x)));
    // L_m(x) = sum_k C(m,k) (-x)^k / k!, coefficients exact in GMP.
    int m = rng.integer(2, 25);
    BigReal want = 0;
    for (int k = m; k >= 0; --k) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
      mpz_class kf;
      mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
      BigReal coef(mpq_class(c, kf));
      want = want * (-x) + coef;
    }
    BigReal scale = exp(abs(x));  // crude bound on cancellation in the alternating sum
    EXPECT_LT(abs(laguerre(m, x, kCfg) - want), pow10(-44) * scale) << "m=" << m << " x=" << x.str();
  }
}

TEST(Laguerre, DerivativeAtZero) {
  PrecisionScope scope(50);
  for (int m = 0; m <= 10; ++m) EXPECT_EQ(laguerre_with_derivative(m + 1, BigReal(0), kCfg).derivative, -(m + 1));
}

TEST(Laguerre, DerivativeMatchesDifferenceQuotient) {
  PrecisionScope scope(50);
  Rng rng(27);
  for (int i = 0; i < 20; ++i) {
    int m = rng.integer(1, 15);
    BigReal x = rng.decimal(0, 30);
    BigReal h = pow10(-15);
    BigReal fd = (laguerre(m, x + h, kCfg) - laguerre(m, x - h, kCfg)) / (2 * h);
    EXPECT_LT(abs(laguerre_with_derivative(m, x, kCfg).derivative - fd), pow10(-20) * exp(x));
  }
}

TEST(Laguerre, BoundedByHalfExponential) {
  PrecisionScope scope(50);
  Rng rng(28);
  for (int i = 0; i < 300; ++i) {
    int m = rng.integer(0, 50);
    BigReal x = rng.decimal(1e-6, 100);
    EXPECT_LE(abs(laguerre(m, x, kCfg)), exp(x / 2)) << "m=" << m << " x=" << x.str();
  }
}

TEST(HardyLittlewood, ZeroAndSmallArgument) {
  PrecisionScope scope(50);
  SeriesValue h0 = hardy_littlewood_H(BigReal(0), kCfg);
  EXPECT_TRUE(h0.value.is_zero());
  BigReal z = pow10(-6);
  BigReal ratio = hardy_littlewood_H(z, kCfg).value / z;
  // Taylor: H(z)/z = zeta(2) - z^2 zeta(4)/6 + ...
  EXPECT_LT(abs(ratio - (pi() * pi() / 6 - z * z * cmv::testing::mpfr_zeta(4) / 6)), pow10(-22));
  EXPECT_EQ(ratio.str(8), "1.6449341");
}

TEST(HardyLittlewood, MatchesZetaSeriesOracle) {
  PrecisionScope scope(50);
  Rng rng(29);
  for (int i = 0; i < 20; ++i) {
    BigReal z = rng.decimal(-5, 5);
    SeriesValue h = hardy_littlewood_H(z, kCfg);
    EXPECT_LT(abs(h.value - h_zeta_series(z)), pow10(-40) + h.tail_bound) << z.str();
  }
}

TEST(HardyLittlewood, IsOdd) {
  PrecisionScope scope(50);
  Rng rng(30);
  for (int i = 0; i < 20; ++i) {
    BigReal z = rng.decimal(0, 500);
    SeriesValue a = hardy_littlewood_H(z, kCfg);
    SeriesValue b = hardy_littlewood_H(-z, kCfg);
    EXPECT_LE(abs(a.value + b.value), a.tail_bound + b.tail_bound);
  }
}

TEST(HardyLittlewood, TailBoundIsHonest) {
  // Tenfold the explicit terms: the value moves by less than the first tail bound.
  PrecisionScope scope(50);
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    BigReal z = rng.decimal(0.5, 200);
    long k = rng.integer(20, 200);
    SeriesValue coarse = hardy_littlewood_H(z, kCfg, k);
    SeriesValue fine = hardy_littlewood_H(z, kCfg, 10 * k);
    EXPECT_LT(abs(coarse.value - fine.value), coarse.tail_bound + fine.tail_bound + pow10(-45))
        << "z=" << z.str() << " K=" << k;
  }
}

TEST(SFunction, ValuesAndSymmetry) {
  PrecisionScope scope(50);
  EXPECT_EQ(s_function(BigReal(0), kCfg).value, BigReal(1) / 2);
  Rng rng(32);
  for (int i = 0; i < 10; ++i) {
    BigReal z = rng.decimal(0, 100);
    SeriesValue a = s_function(z, kCfg);
    SeriesValue b = s_function(-z, kCfg);
    EXPECT_LE(abs(a.value + b.value - 1), a.tail_bound + b.tail_bound + pow10(-48));
  }
}

TEST(SFunction, MatchesLongPartialSum) {
  // 10^7 terms of sum sin(w/k)/k at w = 1/(2 pi); the remainder is below w/N < 2e-8.
  const long double w = 1.0L / (2.0L * 3.14159265358979323846264338327950288L);
  long double sum = 0, comp = 0;
  for (long k = 10'000'000; k >= 1; --k) {
    long double term = std::sin(w / static_cast<long double>(k)) / static_cast<long double>(k);
    long double y = term - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  long double want = 0.5L + sum / 3.14159265358979323846264338327950288L;
  PrecisionScope scope(50);
  double got = s_function(BigReal(1), kCfg).value.to_double();
  EXPECT_NEAR(got, static_cast<double>(want), 1e-7);
}

TEST(QTrigamma, MatchesDoubleSumForm) {
  // (log q)^2 sum_{n>=0} q^(x+n)/(1 - q^(x+n))^2 regroups the same double sum.
  PrecisionScope scope(60);
  for (const char* qs : {"0.5", "0.2", "0.9"}) {
    for (const char* xs : {"1", "0.3", "4.5"}) {
      BigReal q = BigReal::parse(qs), x = BigReal::parse(xs);
      BigReal l = log(q);
      BigReal want = 0;
      for (long n = 0; n < 3000; ++n) {
        BigReal p = pow(q, x + n);
        want += p / ((1 - p) * (1 - p));
      }
      want *= l * l;
      PrecisionScope work(50);
      EXPECT_LT(abs(q_trigamma(q, x, kCfg) - want), pow10(-40) * want) << qs << " " << xs;
    }
  }
}

TEST(QTrigamma, LimitsAndMonotonicity) {
  PrecisionScope scope(50);
  BigReal near = q_trigamma(BigReal::parse("0.9999"), BigReal(2), kCfg);
  EXPECT_LT(abs(near - polygamma(1, BigReal(2), kCfg)), BigReal::parse("1e-3"));
  EXPECT_LT(q_trigamma(BigReal(1) / 2, BigReal(100), kCfg), BigReal::parse("1e-25"));
  Rng rng(33);
  for (int i = 0; i < 30; ++i) {
    BigReal q = rng.decimal(0.05, 0.95);
    BigReal x = rng.log_decimal(0.01, 50);
    BigReal a = q_trigamma(q, x, kCfg);
    BigReal b = q_trigamma(q, x * BigReal::parse("1.01"), kCfg);
    EXPECT_GT(a, 0);
    EXPECT_GT(a, b);
  }
  EXPECT_THROW(q_trigamma(BigReal(1), BigReal(1), kCfg), DomainError);
  EXPECT_THROW(q_trigamma(BigReal(1) / 2, BigReal(0), kCfg), DomainError);
}
