#include "cmv/cm_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "cmv/errors.hpp"
#include "cmv/paper_functions.hpp"
#include "cmv/special_functions.hpp"

namespace cmv {

namespace {

// Runs fn(i) for i in [0, count), each result stored by the callee at slot i,
// so the outcome is independent of scheduling. The exception of the lowest
// failing index is rethrown, as a sequential loop would.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (threads > count) threads = static_cast<unsigned>(count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

constexpr int kFdGuardDigits = 15;

void require_n_max(int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0, got " + std::to_string(n_max));
}

BigReal signed_by_order(const BigReal& v, int n) { return n % 2 == 0 ? v : -v; }

TableEntry entry_from(const Approx& a) { return TableEntry{a.value, a.err, false}; }

TableEntry entry_from(const SeriesValue& s) { return TableEntry{s.value, s.tail_bound, false}; }

// Collects comparisons lhs < rhs, keeping the worst one per label.
class InequalityAccumulator {
 public:
  InequalityAccumulator(std::string name, GridSpec grid) {
    report_.name = std::move(name);
    report_.grid = std::move(grid);
  }

  void add(const std::string& label, const BigReal& x, const BigReal& lhs, const BigReal& rhs, const BigReal& err) {
    BigReal scale = abs(rhs);
    if (scale.is_zero()) scale = 1;
    BigReal margin = (rhs - lhs - err) / scale;
    Witness w{x, lhs, rhs, label};
    auto it = std::find_if(worst_.begin(), worst_.end(), [&](const auto& e) { return e.second.label == label; });
    if (it == worst_.end()) {
      worst_.emplace_back(margin, w);
    } else if (margin < it->first) {
      *it = {margin, w};
    }
    if (!(margin > 0) && failing_.size() < kMaxFailing) failing_.push_back(std::move(w));
    if (!any_ || margin < report_.worst_margin) report_.worst_margin = margin;
    any_ = true;
  }

  InequalityReport finish() {
    if (!any_) throw DomainError(report_.name + ": no grid point satisfies the check's domain");
    report_.pass = report_.worst_margin > 0;
    for (auto& [margin, w] : worst_) report_.witnesses.push_back(std::move(w));
    for (auto& w : failing_) report_.witnesses.push_back(std::move(w));
    return std::move(report_);
  }

 private:
  static constexpr std::size_t kMaxFailing = 50;
  InequalityReport report_;
  std::vector<std::pair<BigReal, Witness>> worst_;
  std::vector<Witness> failing_;
  bool any_ = false;
};

BigReal exact_factorial(int n) { return factorial(static_cast<unsigned long>(n)); }

// F(x) = (-1)^m x^(m+1) Phi^(m)(x) with its error bound.
Approx scaled_phi(int m, const BigReal& x, const PrecisionConfig& cfg) {
  return phi_scaled_derivatives(m, BigReal(m + 1), x, 0, cfg)[0];
}

Extrapolation extrapolate_dyadic(const std::function<BigReal(const BigReal&)>& sample, bool toward_infinity) {
  std::vector<BigReal> h;
  std::vector<BigReal> y;
  for (int j = 5; j <= 20; ++j) {
    BigReal hj = ldexp(BigReal(1), -j);
    y.push_back(sample(toward_infinity ? 1 / hj : hj));
    h.push_back(std::move(hj));
  }
  return extrapolate_to_zero(h, y);
}

SeriesValue search_sample(const FunctionId& fid, const BigReal& t, const PrecisionConfig& cfg) {
  if (fid.family == Family::HLH) return hardy_littlewood_H(t, cfg);
  return g_m_kernel(fid.m, t, cfg);
}

}  // namespace

std::string_view spacing_name(Spacing s) { return s == Spacing::Linear ? "linear" : "log"; }

Spacing parse_spacing(std::string_view text) {
  if (text == "linear") return Spacing::Linear;
  if (text == "log" || text == "logarithmic") return Spacing::Logarithmic;
  throw ParseError("unknown grid spacing '" + std::string(text) + "'");
}

GridSpec GridSpec::linear(const BigReal& lo, const BigReal& hi, int count) {
  return GridSpec{lo, hi, count, Spacing::Linear};
}

GridSpec GridSpec::logarithmic(const BigReal& lo, const BigReal& hi, int count) {
  return GridSpec{lo, hi, count, Spacing::Logarithmic};
}

void GridSpec::validate() const {
  if (!(x_min > 0) || !x_min.is_finite()) throw DomainError("grid: x_min must be > 0, got " + x_min.str(20));
  if (!(x_max > x_min) || !x_max.is_finite()) {
    throw DomainError("grid: x_max must exceed x_min, got " + x_max.str(20));
  }
  if (count < 2) throw DomainError("grid: count must be >= 2, got " + std::to_string(count));
}

std::vector<BigReal> GridSpec::points() const {
  validate();
  const BigReal lo = working_copy(x_min);
  const BigReal hi = working_copy(x_max);
  std::vector<BigReal> out;
  out.reserve(static_cast<std::size_t>(count));
  const int last = count - 1;
  if (spacing == Spacing::Linear) {
    const BigReal width = hi - lo;
    for (int i = 0; i < last; ++i) out.push_back(lo + width * i / last);
  } else {
    const BigReal log_lo = log(lo);
    const BigReal log_width = log(hi) - log_lo;
    for (int i = 0; i < last; ++i) out.push_back(i == 0 ? lo : exp(log_lo + log_width * i / last));
  }
  out.push_back(hi);
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i - 1] < out[i])) throw PrecisionError("grid: points not separable at the working precision");
  }
  return out;
}

bool has_closed_form_derivatives(Family family) {
  switch (family) {
    case Family::PhiScaled:
    case Family::PhiQ:
    case Family::PhiQInv:
    case Family::FAlphaLog:
    case Family::Theta1:
      return true;
    default:
      return false;
  }
}

std::vector<TableEntry> fd_signed_derivatives(const ConfiguredFunction& f, const BigReal& x, int n_max,
                                              const PrecisionConfig& cfg) {
  require_n_max(n_max);
  const int max_digits = std::max(100, 2 * cfg.digits);
  std::vector<TableEntry> out;
  out.reserve(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    FiniteDifference fd = fd_derivative(f, n, x, cfg, max_digits);
    PrecisionScope scope(cfg.digits);
    out.push_back(TableEntry{working_copy(signed_by_order(fd.value, n)), working_copy(fd.err), !fd.converged});
  }
  return out;
}

std::vector<TableEntry> signed_derivatives(const FunctionId& fid, const BigReal& x_in, int n_max,
                                           const PrecisionConfig& cfg) {
  cfg.validate();
  fid.validate();
  require_n_max(n_max);
  PrecisionScope scope(cfg.digits);
  const BigReal x = working_copy(x_in);
  std::vector<TableEntry> out;
  switch (fid.family) {
    case Family::PhiScaled:
      for (const Approx& a : phi_scaled_derivatives(fid.m, fid.alpha, x, n_max, cfg)) out.push_back(entry_from(a));
      return out;
    case Family::PhiQ:
      for (const SeriesValue& s : phi_q_derivatives(fid.q, x, n_max, cfg)) out.push_back(entry_from(s));
      return out;
    case Family::PhiQInv:
      for (const SeriesValue& s : phi_q_derivatives(1 / working_copy(fid.q), x, n_max, cfg)) {
        out.push_back(entry_from(s));
      }
      return out;
    case Family::FAlphaLog:
      for (const Approx& a : f_alpha_log_derivatives(fid.alpha, x, n_max, cfg)) out.push_back(entry_from(a));
      return out;
    case Family::Theta1: {
      std::vector<Approx> d = theta1_derivatives(x, n_max, cfg);
      for (int n = 0; n <= n_max; ++n) {
        const Approx& a = d[static_cast<std::size_t>(n)];
        out.push_back(TableEntry{signed_by_order(a.value, n), a.err, false});
      }
      return out;
    }
    default:
      break;
  }
  // Difference quotients amplify evaluation noise, and the catalog functions
  // can lose a few digits to internal cancellation (theta1 at large x), so
  // they are evaluated with guard digits beyond the difference arithmetic.
  ConfiguredFunction f = [fid](const BigReal& t, const PrecisionConfig& c) {
    PrecisionConfig guarded = c;
    guarded.digits = c.digits + kFdGuardDigits;
    guarded.series_tol_exponent = c.series_tol_exponent - kFdGuardDigits;
    return evaluate(fid, t, guarded).value;
  };
  out = fd_signed_derivatives(f, x, n_max, cfg);
  // The order-0 entry is a plain evaluation and carries its own bound.
  out[0] = entry_from(evaluate(fid, x, cfg));
  return out;
}

namespace {

DerivativeTable build_table(const std::function<std::vector<TableEntry>(const BigReal&)>& column,
                            const FunctionId& fid, const GridSpec& grid, int n_max, const PrecisionConfig& cfg,
                            unsigned threads) {
  cfg.validate();
  require_n_max(n_max);
  PrecisionScope scope(cfg.digits);
  DerivativeTable table;
  table.fid = fid;
  table.grid = grid;
  table.n_max = n_max;
  table.xs = grid.points();
  std::vector<std::vector<TableEntry>> columns(table.xs.size());
  parallel_for(table.xs.size(), threads, [&](std::size_t i) {
    PrecisionScope worker_scope(cfg.digits);
    columns[i] = column(table.xs[i]);
  });
  table.entries.assign(static_cast<std::size_t>(n_max + 1), std::vector<TableEntry>(table.xs.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (int n = 0; n <= n_max; ++n) {
      table.entries[static_cast<std::size_t>(n)][i] = std::move(columns[i][static_cast<std::size_t>(n)]);
    }
  }
  return table;
}

}  // namespace

DerivativeTable derivative_table(const FunctionId& fid, const GridSpec& grid, int n_max, const PrecisionConfig& cfg,
                                 unsigned threads) {
  fid.validate();
  return build_table([&](const BigReal& x) { return signed_derivatives(fid, x, n_max, cfg); }, fid, grid, n_max,
                     cfg, threads);
}

DerivativeTable derivative_table(const ConfiguredFunction& f, const FunctionId& fid, const GridSpec& grid, int n_max,
                                 const PrecisionConfig& cfg, unsigned threads) {
  return build_table([&](const BigReal& x) { return fd_signed_derivatives(f, x, n_max, cfg); }, fid, grid, n_max,
                     cfg, threads);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::AllNonnegative:
      return "AllNonnegative";
    case Verdict::ViolationsFound:
      return "ViolationsFound";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::AllNonnegative, Verdict::ViolationsFound, Verdict::Inconclusive}) {
    if (verdict_name(v) == text) return v;
  }
  throw ParseError("unknown verdict '" + std::string(text) + "'");
}

CMReport summarize(const DerivativeTable& table) {
  CMReport report;
  report.fid = table.fid;
  report.grid = table.grid;
  report.n_max = table.n_max;
  bool first = true;
  for (int n = 0; n <= table.n_max; ++n) {
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
      const TableEntry& e = table.at(n, i);
      BigReal margin = e.value - e.err;
      if (first || margin < report.min_margin) {
        report.min_margin = margin;
        report.min_margin_n = n;
        report.min_margin_x = table.xs[i];
        first = false;
      }
      SignEntry s{n, table.xs[i], e.value, margin};
      if (e.inconclusive) {
        report.inconclusive.push_back(std::move(s));
      } else if (e.value + e.err < 0) {
        report.violations.push_back(std::move(s));
      } else if (margin < 0) {
        report.inconclusive.push_back(std::move(s));
      }
    }
  }
  if (!report.violations.empty()) {
    report.verdict = Verdict::ViolationsFound;
  } else if (!report.inconclusive.empty()) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = Verdict::AllNonnegative;
  }
  return report;
}

CMReport check_cm(const FunctionId& fid, const GridSpec& grid, int n_max, const PrecisionConfig& cfg,
                  unsigned threads) {
  return summarize(derivative_table(fid, grid, n_max, cfg, threads));
}

LogCMReport check_log_cm(const BigReal& alpha, const GridSpec& grid, int n_max, const PrecisionConfig& cfg,
                         unsigned threads) {
  if (n_max < 1) throw DomainError("check_log_cm: n_max must be >= 1, got " + std::to_string(n_max));
  LogCMReport out;
  out.log_derivative = check_cm(FunctionId::f_alpha_log(alpha), grid, n_max, cfg, threads);
  out.function = check_cm(FunctionId::f_alpha(alpha), grid, n_max, cfg, threads);
  out.consistent = !(out.log_derivative.verdict == Verdict::AllNonnegative &&
                     out.function.verdict == Verdict::ViolationsFound);
  return out;
}

InequalityReport verify_phi_double_inequality(const GridSpec& grid, int m_max, const PrecisionConfig& cfg) {
  cfg.validate();
  if (m_max < 0) throw DomainError("m_max must be >= 0, got " + std::to_string(m_max));
  PrecisionScope scope(cfg.digits);
  const std::vector<BigReal> xs = grid.points();
  InequalityAccumulator acc("phi double inequality", grid);
  for (int m = 0; m <= m_max; ++m) {
    const BigReal mf = exact_factorial(m);
    const BigReal half = mf / 2;
    const std::string tag = "m=" + std::to_string(m);
    std::vector<Approx> values(xs.size());
    parallel_for(xs.size(), 0, [&](std::size_t i) {
      PrecisionScope worker_scope(cfg.digits);
      values[i] = scaled_phi(m, xs[i], cfg);
    });
    // Comparisons are in the x^(m+1)-scaled form: m!/2 < F(x) < m!.
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Approx& f = values[i];
      acc.add(tag + " lower", xs[i], half, f.value, f.err);
      acc.add(tag + " upper", xs[i], f.value, mf, f.err);
      if (i > 0) {
        const Approx& prev = values[i - 1];
        acc.add(tag + " decreasing", xs[i], f.value, prev.value, f.err + prev.err);
      }
    }
  }
  return acc.finish();
}

LimitEstimate phi_scaled_limits(int m, const PrecisionConfig& cfg) {
  cfg.validate();
  if (m < 0) throw DomainError("phi_scaled_limits: m must be >= 0, got " + std::to_string(m));
  PrecisionScope scope(cfg.digits);
  auto sample = [&](const BigReal& x) { return scaled_phi(m, x, cfg).value; };
  return LimitEstimate{extrapolate_dyadic(sample, false), extrapolate_dyadic(sample, true)};
}

ZeroLimits derivative_limits_at_zero(int m, const PrecisionConfig& cfg) {
  cfg.validate();
  if (m < 1) throw DomainError("derivative_limits_at_zero: m must be >= 1, got " + std::to_string(m));
  PrecisionScope scope(cfg.digits);
  auto order = [&](int n) {
    auto sample = [&](const BigReal& x) {
      std::vector<Approx> d = phi_scaled_derivatives(m, BigReal(m + 1), x, n, cfg);
      return signed_by_order(d[static_cast<std::size_t>(n)].value, n);
    };
    return extrapolate_dyadic(sample, false);
  };
  return ZeroLimits{order(m + 1), order(m + 2)};
}

ZeroLimits stated_zero_limit_constants(int m, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal mf = exact_factorial(m);
  const BigReal m1f = exact_factorial(m + 1);
  const BigReal z1 = zeta(m + 1, cfg);
  const BigReal z2 = zeta(m + 2, cfg);
  ZeroLimits out;
  out.order_m1.value = -(m * m1f * mf * z1);
  out.order_m2.value = -(m1f * m1f * (m + 1) * (z2 + z1));
  return out;
}

ZeroLimits exact_zero_limit_constants(int m, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal mf = exact_factorial(m);
  const BigReal m1f = exact_factorial(m + 1);
  const BigReal m2f = exact_factorial(m + 2);
  ZeroLimits out;
  out.order_m1.value = -(m * m1f * mf * zeta(m + 1, cfg));
  out.order_m2.value = m2f * (m + 1) * m1f * zeta(m + 2, cfg);
  return out;
}

std::vector<ConvergenceRow> convergence_study(const BigReal& z_in, const std::vector<int>& m_list,
                                              const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal z = working_copy(z_in);
  if (!(z > 0)) throw DomainError("convergence_study: z must be > 0 (f_m needs t = z/m > 0), got " + z.str(20));
  const SeriesValue s = s_function(z, cfg);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    const int m = m_list[i];
    if (m < 1) throw DomainError("convergence_study: m must be >= 1, got " + std::to_string(m));
    if (i > 0 && m <= m_list[i - 1]) throw DomainError("convergence_study: m list must be increasing");
    const BigReal mf = exact_factorial(m);
    const SeriesValue f = f_m(m, z / m, cfg);
    ConvergenceRow row;
    row.m = m;
    row.scaled = f.value / mf;
    row.target = s.value;
    row.error = abs(row.scaled - row.target);
    row.error_bound = f.tail_bound / mf + s.tail_bound;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view strategy_name(SearchStrategy s) { return s == SearchStrategy::Grid ? "grid" : "coarse-to-fine"; }

SearchStrategy parse_strategy(std::string_view text) {
  if (text == "grid") return SearchStrategy::Grid;
  if (text == "coarse-to-fine") return SearchStrategy::CoarseToFine;
  throw ParseError("unknown search strategy '" + std::string(text) + "'");
}

std::vector<SearchRow> SearchResult::negatives() const {
  std::vector<SearchRow> out;
  for (const SearchRow& r : rows) {
    if (r.value < 0) out.push_back(r);
  }
  return out;
}

SearchResult search_negative(const FunctionId& fid, const BigReal& t_min_in, const BigReal& t_max_in, int points,
                             SearchStrategy strategy, const PrecisionConfig& cfg) {
  cfg.validate();
  fid.validate();
  if (fid.family != Family::HLH && fid.family != Family::Gm) {
    throw DomainError("search_negative: only H and g-m are searchable, got " + std::string(family_name(fid.family)));
  }
  if (points < 1) throw DomainError("search_negative: points must be >= 1");
  PrecisionScope scope(cfg.digits);
  SearchResult result;
  result.fid = fid;
  result.t_min = working_copy(t_min_in);
  result.t_max = working_copy(t_max_in);
  result.points = points;
  result.strategy = strategy;
  if (!result.t_min.is_finite() || !result.t_max.is_finite() || result.t_max < result.t_min) {
    throw DomainError("search_negative: need a bounded range with t_min <= t_max");
  }

  struct Sample {
    BigReal t;
    SeriesValue s;
    bool valid = false;
  };
  std::vector<Sample> samples;
  auto run = [&](std::vector<BigReal> ts) {
    std::vector<Sample> batch(ts.size());
    parallel_for(ts.size(), 0, [&](std::size_t i) {
      PrecisionScope worker_scope(cfg.digits);
      batch[i].t = ts[i];
      if (fid.family == Family::Gm && !(ts[i] > 0)) return;
      batch[i].s = search_sample(fid, ts[i], cfg);
      batch[i].valid = true;
    });
    for (Sample& s : batch) {
      if (!s.valid) continue;
      ++result.evaluated;
      samples.push_back(std::move(s));
    }
  };
  auto sign_certain = [](const Sample& s) { return abs(s.s.value) > s.s.tail_bound; };

  const BigReal width = result.t_max - result.t_min;
  std::vector<BigReal> coarse;
  if (width.is_zero() || points == 1) {
    coarse.push_back(result.t_min);
  } else {
    for (int i = 0; i < points - 1; ++i) coarse.push_back(result.t_min + width * i / (points - 1));
    coarse.push_back(result.t_max);
  }
  run(std::move(coarse));

  if (strategy == SearchStrategy::CoarseToFine && !width.is_zero() && points > 1) {
    BigReal spacing = width / (points - 1);
    constexpr int kPasses = 3;
    constexpr std::size_t kSeeds = 10;
    constexpr int kRefinePoints = 21;
    for (int pass = 0; pass < kPasses; ++pass) {
      std::vector<const Sample*> certain;
      for (const Sample& s : samples) {
        if (sign_certain(s)) certain.push_back(&s);
      }
      std::sort(certain.begin(), certain.end(), [](const Sample* a, const Sample* b) {
        if (a->s.value != b->s.value) return a->s.value < b->s.value;
        return a->t < b->t;
      });
      if (certain.size() > kSeeds) certain.resize(kSeeds);
      std::vector<BigReal> ts;
      for (const Sample* seed : certain) {
        const BigReal lo = max(result.t_min, seed->t - spacing);
        const BigReal hi = min(result.t_max, seed->t + spacing);
        for (int k = 0; k < kRefinePoints; ++k) {
          BigReal t = lo + (hi - lo) * k / (kRefinePoints - 1);
          bool seen = std::any_of(samples.begin(), samples.end(), [&](const Sample& s) { return s.t == t; }) ||
                      std::any_of(ts.begin(), ts.end(), [&](const BigReal& u) { return u == t; });
          if (!seen) ts.push_back(std::move(t));
        }
      }
      run(std::move(ts));
      spacing /= kRefinePoints - 1;
    }
  }

  for (Sample& s : samples) {
    if (sign_certain(s)) {
      result.rows.push_back(SearchRow{std::move(s.t), std::move(s.s.value), std::move(s.s.tail_bound)});
    } else {
      ++result.uncertain;
    }
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const SearchRow& a, const SearchRow& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.t < b.t;
  });
  return result;
}

InequalityReport verify_theta1_bounds(const GridSpec& grid, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const std::vector<BigReal> xs = grid.points();
  std::vector<Approx> values(xs.size());
  parallel_for(xs.size(), 0, [&](std::size_t i) {
    PrecisionScope worker_scope(cfg.digits);
    values[i] = theta1(xs[i], cfg);
  });
  InequalityAccumulator acc("theta1 bounds", grid);
  const BigReal half = BigReal(1) / 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc.add("lower 1/2", xs[i], half, values[i].value, values[i].err);
    acc.add("upper 1/2 + 1/(12x)", xs[i], values[i].value, half + 1 / (12 * xs[i]), values[i].err);
  }
  return acc.finish();
}

InequalityReport verify_theta1_derivative_bound(const GridSpec& grid, int n_max, const BigReal& alpha_in,
                                                const PrecisionConfig& cfg) {
  cfg.validate();
  if (n_max < 2) throw DomainError("theta1 derivative bound: n_max must be >= 2");
  PrecisionScope scope(cfg.digits);
  const BigReal alpha = working_copy(alpha_in);
  if (alpha < BigReal(-1) / 4) throw DomainError("theta1 derivative bound: alpha must be >= -1/4");
  std::vector<BigReal> xs;
  for (BigReal& x : grid.points()) {
    if (x > 1) xs.push_back(std::move(x));
  }
  std::vector<std::vector<Approx>> columns(xs.size());
  parallel_for(xs.size(), 0, [&](std::size_t i) {
    PrecisionScope worker_scope(cfg.digits);
    columns[i] = theta1_derivatives(xs[i], n_max, cfg);
  });
  InequalityAccumulator acc("theta1 derivative bound", grid);
  const BigReal factor = alpha + BigReal(1) / 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const BigReal& x = xs[i];
    const BigReal lx = log(x);
    for (int n = 2; n <= n_max; ++n) {
      const Approx& d = columns[i][static_cast<std::size_t>(n)];
      const BigReal v = signed_by_order(d.value, n);
      const std::string tag = "n=" + std::to_string(n);
      acc.add(tag + " positive", x, BigReal(0), v, d.err);
      acc.add(tag + " upper", x, v, exact_factorial(n - 1) * factor / (pow(x, static_cast<long>(n)) * lx), d.err);
    }
  }
  return acc.finish();
}

InequalityReport verify_alzer_inequality(const GridSpec& grid, int n_max, const PrecisionConfig& cfg) {
  cfg.validate();
  if (n_max < 1) throw DomainError("alzer inequality: n_max must be >= 1");
  PrecisionScope scope(cfg.digits);
  const std::vector<BigReal> xs = grid.points();
  InequalityAccumulator acc("alzer inequality", grid);
  for (const BigReal& x : xs) {
    for (int n = 1; n <= n_max; ++n) {
      // (x psi)^(k) = x psi^(k) + k psi^(k-1), k = n+1.
      const Approx a = polygamma_approx(n + 1, x, cfg);
      const Approx b = polygamma_approx(n, x, cfg);
      const BigReal lhs = signed_by_order(x * a.value + (n + 1) * b.value, n + 1);
      const BigReal err = x * a.err + (n + 1) * b.err;
      acc.add("n=" + std::to_string(n), x, lhs, exact_factorial(n - 1) / pow(x, static_cast<long>(n)), err);
    }
  }
  return acc.finish();
}

InequalityReport verify_fm_half_factorial_bound(const GridSpec& grid, int m_max, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  const BigReal threshold = 2 * log(BigReal(3));
  InequalityAccumulator acc("f_m >= m!/2", grid);
  for (const BigReal& t : grid.points()) {
    if (t < threshold) continue;
    for (int m = 0; m <= m_max; ++m) {
      const SeriesValue f = f_m(m, t, cfg);
      acc.add("m=" + std::to_string(m), t, exact_factorial(m) / 2, f.value, f.tail_bound);
    }
  }
  return acc.finish();
}

InequalityReport verify_elementary_inequality(const GridSpec& grid, const PrecisionConfig& cfg) {
  cfg.validate();
  PrecisionScope scope(cfg.digits);
  InequalityAccumulator acc("3x^2 - x cos x + sin x > 0", grid);
  for (const BigReal& x : grid.points()) {
    const BigReal v = elementary_inequality(x, cfg);
    acc.add("positive", x, BigReal(0), v, rounding_unit() * (3 * x * x + abs(x) + 1) * 4);
  }
  return acc.finish();
}

LaplaceCheck laplace_check_g(int m, const BigReal& x_in, const BigReal& tol_in, const PrecisionConfig& cfg) {
  cfg.validate();
  if (m < 1) throw DomainError("laplace_check_g: m must be >= 1");
  PrecisionScope scope(cfg.digits);
  const BigReal x = working_copy(x_in);
  const BigReal tol = working_copy(tol_in);
  LaplaceCheck out;
  out.target = phi_scaled(m, BigReal(m), x, cfg);
  const BigReal mf = exact_factorial(m);
  const BigReal two_log2 = 2 * log(BigReal(2));
  // |g_m(t)| <= 2 m! (1 + (m+1) t) once t >= 2 log 2.
  auto tail = [&](const BigReal& T) {
    if (T < two_log2) return BigReal(1e300);
    return 2 * mf * ((1 + (m + 1) * T) / x + BigReal(m + 1) / (x * x)) * exp(-(x * T));
  };
  BigReal worst_tail;
  auto g = [&](const BigReal& t) {
    SeriesValue s = g_m_kernel(m, t, cfg);
    worst_tail = max(worst_tail, s.tail_bound);
    return s.value;
  };
  QuadratureResult q = laplace_transform(g, x, tail, tol * abs(out.target) / 10);
  out.integral = q.value;
  out.integral_err = q.err + worst_tail / x;
  out.relative_error = abs(out.integral - out.target) / abs(out.target);
  return out;
}

LaplaceCheck laplace_check_theta(int m, const BigReal& x_in, const BigReal& tol_in, const PrecisionConfig& cfg) {
  cfg.validate();
  if (m < 1) throw DomainError("laplace_check_theta: m must be >= 1");
  PrecisionScope scope(cfg.digits);
  const BigReal x = working_copy(x_in);
  const BigReal tol = working_copy(tol_in);
  LaplaceCheck out;
  out.target = phi_scaled(m, BigReal(m - 2), x, cfg);
  const BigReal mf = exact_factorial(m);
  PrecisionConfig inner = cfg;
  inner.series_tol_exponent = std::log10(tol.to_double()) - 2;
  // |Theta_m(t)| <= m! (t^2/2 + 2t).
  auto tail = [&](const BigReal& T) {
    return mf * ((T * T / 2 + 2 * T) / x + (T + 2) / (x * x) + 1 / (x * x * x)) * exp(-(x * T));
  };
  BigReal worst_relative;
  auto theta = [&](const BigReal& t) {
    Approx a = theta_m(m, t, inner);
    const BigReal scale = mf * t * t / 2;
    if (!scale.is_zero()) worst_relative = max(worst_relative, a.err / scale);
    return a.value;
  };
  QuadratureResult q = laplace_transform(theta, x, tail, tol * abs(out.target) / 10);
  out.integral = q.value;
  out.integral_err = q.err + worst_relative * mf / (x * x * x);
  out.relative_error = abs(out.integral - out.target) / abs(out.target);
  return out;
}

}  // namespace cmv
