#include <gtest/gtest.h>

#include <algorithm>

#include "cmv/cm_engine.hpp"
#include "cmv/errors.hpp"
#include "cmv/paper_functions.hpp"
#include "cmv/special_functions.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace cmv;
using cmv::testing::Rng;

namespace {

const PrecisionConfig kCfg = PrecisionConfig::with_digits(50);

BigReal mf(int m) { return factorial(static_cast<unsigned long>(m)); }

GridSpec random_grid(Rng& rng, int min_count, int max_count) {
  BigReal lo = rng.log_decimal(1e-3, 10, 6);
  BigReal hi = lo * rng.log_decimal(1.5, 1e4, 6);
  int count = rng.integer(min_count, max_count);
  return rng.chance(0.5) ? GridSpec::linear(lo, hi, count) : GridSpec::logarithmic(lo, hi, count);
}

GridSpec refined(const GridSpec& g) {
  GridSpec r = g;
  r.count = 2 * g.count - 1;
  return r;
}

int severity(Verdict v) {
  switch (v) {
    case Verdict::AllNonnegative: return 0;
    case Verdict::Inconclusive: return 1;
    case Verdict::ViolationsFound: return 2;
  }
  return -1;
}

}  // namespace

TEST(Grid, PointsAreStrictlyIncreasingWithExactEndpoints) {
  PrecisionScope scope(50);
  Rng rng(61);
  for (int i = 0; i < 200; ++i) {
    GridSpec g = random_grid(rng, 2, 400);
    std::vector<BigReal> xs = g.points();
    ASSERT_EQ(xs.size(), static_cast<std::size_t>(g.count));
    EXPECT_EQ(xs.front(), g.x_min);
    EXPECT_EQ(xs.back(), g.x_max);
    for (std::size_t k = 1; k < xs.size(); ++k) ASSERT_LT(xs[k - 1], xs[k]) << "seed " << rng.seed() << " i=" << i;
    if (xs.size() >= 3) {
      // Equal steps (linear) or equal ratios (log), to rounding.
      std::size_t mid = xs.size() / 2;
      if (g.spacing == Spacing::Linear) {
        BigReal step = (g.x_max - g.x_min) / (g.count - 1);
        EXPECT_LT(abs((xs[mid] - xs[mid - 1]) - step), pow10(-40) * g.x_max);
      } else {
        BigReal ratio = pow(g.x_max / g.x_min, 1 / BigReal(g.count - 1));
        EXPECT_LT(abs(xs[mid] / xs[mid - 1] - ratio), pow10(-40));
      }
    }
  }
}

TEST(Grid, RefinementKeepsEveryCoarsePoint) {
  PrecisionScope scope(50);
  Rng rng(62);
  for (int i = 0; i < 50; ++i) {
    GridSpec g = random_grid(rng, 2, 60);
    std::vector<BigReal> coarse = g.points();
    std::vector<BigReal> fine = refined(g).points();
    for (std::size_t k = 0; k < coarse.size(); ++k) EXPECT_EQ(fine[2 * k], coarse[k]);
  }
}

TEST(Grid, Validation) {
  PrecisionScope scope(50);
  EXPECT_THROW(GridSpec::linear(BigReal(0), BigReal(1), 5).validate(), DomainError);
  EXPECT_THROW(GridSpec::linear(BigReal(2), BigReal(1), 5).validate(), DomainError);
  EXPECT_THROW(GridSpec::logarithmic(BigReal(1), BigReal(2), 1).validate(), DomainError);
  GridSpec d;
  EXPECT_EQ(d.x_min, BigReal::parse("0.01"));
  EXPECT_EQ(d.x_max, 1000);
  EXPECT_EQ(d.count, 200);
  EXPECT_EQ(d.spacing, Spacing::Logarithmic);
  EXPECT_EQ(parse_spacing("log"), Spacing::Logarithmic);
  EXPECT_EQ(parse_spacing("linear"), Spacing::Linear);
  EXPECT_THROW(parse_spacing("cubic"), ParseError);
}

TEST(Verdict, SummaryFollowsTheErrorAwareDefinition) {
  // Hand-built tables: values straddle zero and errors straddle |value|.
  PrecisionScope scope(50);
  Rng rng(63);
  for (int trial = 0; trial < 300; ++trial) {
    DerivativeTable t;
    t.fid = FunctionId::theta1();
    t.grid = GridSpec::linear(BigReal(1), BigReal(2), rng.integer(2, 6));
    t.xs = t.grid.points();
    t.n_max = rng.integer(0, 4);
    bool any_violation = false, all_nonneg = true;
    BigReal min_margin;
    bool first = true;
    for (int n = 0; n <= t.n_max; ++n) {
      std::vector<TableEntry> row;
      for (std::size_t i = 0; i < t.xs.size(); ++i) {
        TableEntry e;
        e.value = rng.chance(0.8) ? rng.decimal(0, 5) : rng.decimal(-1, 0.2);
        e.err = rng.chance(0.2) ? abs(e.value) * rng.decimal(0.5, 2) : rng.decimal(0, 1e-3);
        e.inconclusive = rng.chance(0.02);
        BigReal margin = e.value - e.err;
        if (first || margin < min_margin) min_margin = margin;
        first = false;
        if (!e.inconclusive && e.value + e.err < 0) any_violation = true;
        if (e.inconclusive || margin < 0) all_nonneg = false;
        row.push_back(e);
      }
      t.entries.push_back(row);
    }
    CMReport r = summarize(t);
    EXPECT_EQ(r.min_margin, min_margin);
    if (any_violation) {
      EXPECT_EQ(r.verdict, Verdict::ViolationsFound);
    } else if (all_nonneg) {
      EXPECT_EQ(r.verdict, Verdict::AllNonnegative);
    } else {
      EXPECT_EQ(r.verdict, Verdict::Inconclusive);
    }
    for (const SignEntry& v : r.violations) {
      const TableEntry& e = t.at(v.n, static_cast<std::size_t>(std::find(t.xs.begin(), t.xs.end(), v.x) - t.xs.begin()));
      EXPECT_LT(e.value + e.err, 0);
      EXPECT_FALSE(e.inconclusive);
    }
  }
}

TEST(Verdict, CheckedTablesAreSound) {
  // Whatever the engine reports, every violation is sign-certain and an
  // all-nonnegative verdict has no entry below its error bound.
  PrecisionScope scope(50);
  Rng rng(64);
  const std::vector<FunctionId> fids = {FunctionId::phi_scaled(1, BigReal(2)), FunctionId::phi_scaled(3, BigReal(4)),
                                        FunctionId::phi_scaled(2, BigReal(0)), FunctionId::phi_q(BigReal::parse("0.5")),
                                        FunctionId::f_alpha_log(BigReal::parse("-0.4")), FunctionId::theta1()};
  for (const FunctionId& fid : fids) {
    GridSpec g = random_grid(rng, 4, 12);
    DerivativeTable t = derivative_table(fid, g, 5, kCfg);
    CMReport r = summarize(t);
    for (int n = 0; n <= t.n_max; ++n) {
      for (std::size_t i = 0; i < t.xs.size(); ++i) {
        const TableEntry& e = t.at(n, i);
        EXPECT_GE(e.err, 0);
        EXPECT_TRUE(e.err.is_finite());
        if (r.verdict == Verdict::AllNonnegative) { EXPECT_GE(e.value - e.err, 0); }
      }
    }
    for (const SignEntry& v : r.violations) EXPECT_LT(v.value, 0) << fid.to_string();
    EXPECT_EQ(r.verdict == Verdict::ViolationsFound, !r.violations.empty());
  }
}

TEST(DerivativeTable, ClosedFormAgreesWithHighPrecisionDifferences) {
  // A random 5% of the cells of each closed-form table, checked against
  // finite differences at 100 digits.
  PrecisionScope scope(50);
  Rng rng(65);
  const PrecisionConfig fd_cfg = PrecisionConfig::with_digits(100);
  const std::vector<FunctionId> fids = {FunctionId::phi_scaled(2, BigReal(0)), FunctionId::phi_scaled(3, BigReal(1)),
                                        FunctionId::phi_q(BigReal::parse("0.3")),
                                        FunctionId::phi_q_inv(BigReal::parse("2.5")),
                                        FunctionId::f_alpha_log(BigReal::parse("-0.25")), FunctionId::theta1()};
  for (const FunctionId& fid : fids) {
    ASSERT_TRUE(has_closed_form_derivatives(fid.family));
    GridSpec g = GridSpec::logarithmic(BigReal::parse("0.05"), BigReal(50), 20);
    const int n_max = 5;
    DerivativeTable t = derivative_table(fid, g, n_max, kCfg);
    int checked = 0;
    for (std::size_t i = 0; i < t.xs.size(); ++i) {
      std::vector<int> orders;
      for (int n = 0; n <= n_max; ++n)
        if (rng.chance(0.05)) orders.push_back(n);
      if (orders.empty()) continue;
      auto f = [&fid](const BigReal& x, const PrecisionConfig& c) { return evaluate(fid, x, c).value; };
      std::vector<TableEntry> fd = fd_signed_derivatives(f, t.xs[i], orders.back(), fd_cfg);
      for (int n : orders) {
        const TableEntry& closed = t.at(n, i);
        const TableEntry& oracle = fd[static_cast<std::size_t>(n)];
        ASSERT_FALSE(oracle.inconclusive);
        EXPECT_LE(abs(closed.value - oracle.value), oracle.err + closed.err + pow10(-40) * abs(oracle.value))
            << fid.to_string() << " n=" << n << " x=" << t.xs[i].str(10);
        ++checked;
      }
    }
    EXPECT_GT(checked, 0);
    RecordProperty(fid.to_string(), checked);
  }
}

TEST(DerivativeTable, IndependentOfThreadCount) {
  PrecisionScope scope(50);
  GridSpec g = GridSpec::logarithmic(BigReal::parse("0.1"), BigReal(100), 24);
  for (const FunctionId& fid : {FunctionId::phi_scaled(2, BigReal(1)), FunctionId::f_m(2)}) {
    DerivativeTable a = derivative_table(fid, g, 3, kCfg, 1);
    DerivativeTable b = derivative_table(fid, g, 3, kCfg, 4);
    EXPECT_EQ(a.xs, b.xs);
    EXPECT_EQ(a.entries, b.entries);
  }
}

TEST(DerivativeTable, Examples) {
  PrecisionScope scope(50);
  DerivativeTable phi_table = derivative_table(FunctionId::phi_scaled(0, BigReal(0)),
                                               GridSpec::linear(BigReal(1), BigReal(10), 10), 3, kCfg);
  for (const auto& row : phi_table.entries)
    for (const TableEntry& e : row) EXPECT_GT(e.value - e.err, 0);

  GridSpec g = GridSpec::logarithmic(BigReal::parse("0.01"), BigReal(1000), 30);
  DerivativeTable th = derivative_table(FunctionId::theta1(), g, 0, kCfg);
  for (std::size_t i = 0; i < th.xs.size(); ++i) {
    EXPECT_GE(th.at(0, i).value, BigReal(1) / 2);
    EXPECT_LE(th.at(0, i).value, BigReal(1) / 2 + 1 / (12 * th.xs[i]));
  }

  auto constant = [](const BigReal&, const PrecisionConfig&) { return BigReal(7); };
  DerivativeTable c = derivative_table(constant, FunctionId::theta1(), GridSpec::linear(BigReal(1), BigReal(3), 5), 4,
                                       kCfg);
  for (int n = 1; n <= 4; ++n)
    for (std::size_t i = 0; i < c.xs.size(); ++i) EXPECT_LE(abs(c.at(n, i).value), c.at(n, i).err + pow10(-40));
}

TEST(Refinement, MoreOrdersOrPointsNeverHideAViolation) {
  PrecisionScope scope(50);
  Rng rng(66);
  const std::vector<FunctionId> fids = {FunctionId::phi_scaled(1, BigReal(2)), FunctionId::phi_scaled(2, BigReal(3)),
                                        FunctionId::phi_scaled(2, BigReal(0)),
                                        FunctionId::f_alpha_log(BigReal::parse("-0.45"))};
  for (int trial = 0; trial < 8; ++trial) {
    const FunctionId& fid = rng.pick(fids);
    GridSpec g = random_grid(rng, 3, 10);
    int n = rng.integer(1, 3);
    CMReport base = check_cm(fid, g, n, kCfg);
    for (const CMReport& finer : {check_cm(fid, refined(g), n, kCfg), check_cm(fid, g, 2 * n, kCfg)}) {
      EXPECT_GE(severity(finer.verdict), severity(base.verdict)) << fid.to_string();
      EXPECT_LE(finer.min_margin, base.min_margin);
      if (base.verdict == Verdict::AllNonnegative && finer.verdict == Verdict::ViolationsFound) {
        ASSERT_FALSE(finer.violations.empty());
        for (const SignEntry& v : finer.violations) EXPECT_LT(v.value, 0);
      }
    }
  }
}

TEST(ScaledPhi, DecreasesAlongIncreasingGrids) {
  PrecisionScope scope(50);
  Rng rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    int m = rng.integer(0, 6);
    GridSpec g = random_grid(rng, 5, 40);
    BigReal prev;
    bool first = true;
    for (const BigReal& x : g.points()) {
      BigReal v = phi_scaled(m, BigReal(m + 1), x, kCfg);
      if (!first) { EXPECT_LT(v, prev) << "m=" << m << " x=" << x.str(12); }
      prev = v;
      first = false;
    }
  }
}

TEST(CheckCm, DegreeExamples) {
  PrecisionScope scope(50);
  GridSpec g = GridSpec::logarithmic(BigReal::parse("0.01"), BigReal(1000), 40);
  CMReport odd = check_cm(FunctionId::phi_scaled(1, BigReal(2)), g, 3, kCfg);
  EXPECT_EQ(odd.verdict, Verdict::ViolationsFound);
  for (int m = 2; m <= 5; ++m) EXPECT_EQ(check_cm(FunctionId::phi_scaled(m, BigReal(m - 2)), g, 6, kCfg).verdict,
                                         Verdict::AllNonnegative)
      << m;
  EXPECT_EQ(check_cm(FunctionId::phi_q(BigReal(1) / 2), g, 8, kCfg).verdict, Verdict::AllNonnegative);
}

TEST(CheckLogCm, QuarterAndLargerAlpha) {
  PrecisionScope scope(50);
  GridSpec g = GridSpec::logarithmic(BigReal::parse("0.05"), BigReal(50), 20);
  LogCMReport quarter = check_log_cm(BigReal(-1) / 4, g, 6, kCfg);
  EXPECT_EQ(quarter.log_derivative.verdict, Verdict::AllNonnegative);
  EXPECT_TRUE(quarter.consistent);
  LogCMReport one = check_log_cm(BigReal(1), g, 6, kCfg);
  EXPECT_EQ(one.log_derivative.verdict, Verdict::AllNonnegative);
  EXPECT_TRUE(one.consistent);
  // Below -1/4 nothing is asserted; the verdicts are recorded.
  for (const char* a : {"-0.30", "-0.40", "-0.49"}) {
    LogCMReport r = check_log_cm(BigReal::parse(a), g, 6, kCfg);
    RecordProperty(std::string("alpha ") + a,
                   std::string(verdict_name(r.log_derivative.verdict)) + " " + r.log_derivative.min_margin.str(6));
  }
}

TEST(PhiDoubleInequality, PassesAndIsSharp) {
  PrecisionScope scope(50);
  InequalityReport r = verify_phi_double_inequality(GridSpec::logarithmic(BigReal::parse("0.01"), BigReal(1000), 30), 6,
                                                    kCfg);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.worst_margin, 0);
  BigReal p1 = phi(BigReal(1), kCfg);
  EXPECT_GT(p1, BigReal(1) / 2);
  EXPECT_LT(p1, 1);
  for (int m = 0; m <= 5; ++m) {
    BigReal tiny = pow10(-4), huge = pow10(4);
    EXPECT_GT(phi_scaled(m, BigReal(m + 1), tiny, kCfg) / mf(m), BigReal::parse("0.999"));
    EXPECT_LT(phi_scaled(m, BigReal(m + 1), huge, kCfg) / (mf(m) / 2), BigReal::parse("1.001"));
  }
}

TEST(Limits, ScaledPhiAtZeroAndInfinity) {
  PrecisionScope scope(50);
  for (int m : {0, 1, 3}) {
    LimitEstimate e = phi_scaled_limits(m, kCfg);
    EXPECT_LT(abs(e.at_zero.value - mf(m)), pow10(-3) * mf(m)) << m;
    EXPECT_LT(abs(e.at_infinity.value - mf(m) / 2), pow10(-3) * mf(m)) << m;
  }
}

TEST(Limits, DerivativesAtZeroMatchTaylorCoefficients) {
  PrecisionScope scope(50);
  BigReal z2 = cmv::testing::mpfr_zeta(2), z3 = cmv::testing::mpfr_zeta(3);
  ZeroLimits one = derivative_limits_at_zero(1, kCfg);
  EXPECT_LT(abs(one.order_m1.value + 2 * z2), BigReal::parse("1e-6"));   // -pi^2/3
  EXPECT_LT(abs(one.order_m2.value - 24 * z3), BigReal::parse("1e-5"));  // 3! 2 2! zeta(3)
  ZeroLimits two = derivative_limits_at_zero(2, kCfg);
  EXPECT_LT(abs(two.order_m1.value + 24 * z3), BigReal::parse("1e-5"));
  for (int m = 1; m <= 4; ++m) {
    ZeroLimits got = derivative_limits_at_zero(m, kCfg);
    ZeroLimits exact = exact_zero_limit_constants(m, kCfg);
    ZeroLimits stated = stated_zero_limit_constants(m, kCfg);
    EXPECT_LT(abs(got.order_m1.value / exact.order_m1.value - 1), pow10(-2)) << m;
    EXPECT_LT(abs(got.order_m2.value / exact.order_m2.value - 1), pow10(-2)) << m;
    EXPECT_EQ(exact.order_m1.value, stated.order_m1.value);
    // The published order-(m+2) constant has the opposite sign.
    EXPECT_LT(stated.order_m2.value, 0);
    EXPECT_GT(exact.order_m2.value, 0);
  }
  BigReal m1_stated = stated_zero_limit_constants(1, kCfg).order_m2.value;
  EXPECT_LT(abs(m1_stated + 8 * (z3 + z2)), pow10(-40));
}

TEST(Convergence, ErrorShrinksWithOrder) {
  PrecisionScope scope(50);
  std::vector<ConvergenceRow> rows = convergence_study(BigReal(5), {10, 20, 40, 60}, kCfg);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_LT(rows.back().error, rows.front().error);
  for (const ConvergenceRow& r : rows) EXPECT_EQ(r.error, abs(r.scaled - r.target));
  std::vector<ConvergenceRow> near0 = convergence_study(BigReal::parse("1e-3"), {10, 60}, kCfg);
  EXPECT_LT(near0.back().error, pow10(-3));
  EXPECT_THROW(convergence_study(BigReal(0), {10}, kCfg), DomainError);
}

TEST(Search, HardyLittlewoodRowsAreSignCertainAndSorted) {
  PrecisionScope scope(30);
  const PrecisionConfig cfg = PrecisionConfig::with_digits(30);
  SearchResult r = search_negative(FunctionId::of(Family::HLH), BigReal(0), BigReal(100), 1000, SearchStrategy::Grid,
                                   cfg);
  EXPECT_EQ(r.evaluated, 1000);
  EXPECT_EQ(static_cast<long>(r.rows.size()) + r.uncertain, r.evaluated);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_GT(abs(r.rows[i].value), r.rows[i].tail_bound);
    if (i > 0) { EXPECT_LE(r.rows[i - 1].value, r.rows[i].value); }
    // H(z) ~ (pi^2/6) z near 0.
    if (r.rows[i].t > 0 && r.rows[i].t < 1) { EXPECT_GT(r.rows[i].value, 0); }
  }
  SearchResult refined_r = search_negative(FunctionId::of(Family::HLH), BigReal(0), BigReal(100), 1000,
                                           SearchStrategy::CoarseToFine, cfg);
  ASSERT_FALSE(refined_r.rows.empty());
  EXPECT_LE(refined_r.rows.front().value, r.rows.front().value);
}

TEST(Search, KernelHasNoNegativesNearOrigin) {
  PrecisionScope scope(30);
  const PrecisionConfig cfg = PrecisionConfig::with_digits(30);
  SearchResult r = search_negative(FunctionId::g_m(2), BigReal(0), BigReal(30), 300, SearchStrategy::Grid, cfg);
  EXPECT_TRUE(r.negatives().empty());
  EXPECT_EQ(r.evaluated, 299);  // t = 0 is outside the kernel's domain
}

TEST(Search, DegenerateRangeGivesOneSample) {
  PrecisionScope scope(30);
  SearchResult r = search_negative(FunctionId::of(Family::HLH), BigReal(50), BigReal(50), 10000, SearchStrategy::Grid,
                                   PrecisionConfig::with_digits(30));
  EXPECT_EQ(r.evaluated, 1);
  EXPECT_EQ(r.rows.size() + static_cast<std::size_t>(r.uncertain), 1u);
  EXPECT_THROW(search_negative(FunctionId::theta1(), BigReal(1), BigReal(2), 10, SearchStrategy::Grid, kCfg),
               DomainError);
}

TEST(Theta1, BoundChecks) {
  PrecisionScope scope(50);
  GridSpec g = GridSpec::logarithmic(BigReal::parse("0.01"), BigReal(1000), 40);
  EXPECT_TRUE(verify_theta1_bounds(g, kCfg).pass);
  InequalityReport d = verify_theta1_derivative_bound(GridSpec::linear(BigReal(1), BigReal(100), 40), 5,
                                                      BigReal(-1) / 4, kCfg);
  EXPECT_TRUE(d.pass);
  // n = 2, x = 2: 0 < theta1''(2) <= (1/4)/(4 log 2), theta1'' from a difference quotient of the MPFR oracle.
  PrecisionScope wide(60);
  auto oracle = [](const BigReal& x) { return x * (log(x) - cmv::testing::mpfr_psi(x)); };
  BigReal x = 2, h = pow10(-15);
  BigReal d2 = (oracle(x + h) - 2 * oracle(x) + oracle(x - h)) / (h * h);
  EXPECT_GT(d2, 0);
  EXPECT_LE(d2, BigReal(1) / 4 / (4 * log(BigReal(2))));
}

TEST(OtherInequalities, AlzerHalfFactorialAndElementary) {
  PrecisionScope scope(50);
  EXPECT_TRUE(verify_alzer_inequality(GridSpec::logarithmic(BigReal::parse("0.1"), BigReal(100), 40), 5, kCfg).pass);
  EXPECT_TRUE(verify_fm_half_factorial_bound(GridSpec::logarithmic(BigReal(2), BigReal(200), 30), 6, kCfg).pass);
  EXPECT_TRUE(verify_elementary_inequality(GridSpec::linear(BigReal::parse("0.001"), BigReal(100), 500), kCfg).pass);
}

TEST(Laplace, ThetaKernelTransformIsScaledPhi) {
  PrecisionScope scope(30);
  LaplaceCheck c = laplace_check_theta(2, BigReal(1), pow10(-8), PrecisionConfig::with_digits(30));
  EXPECT_LT(c.relative_error, pow10(-6));
}
