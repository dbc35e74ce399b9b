#pragma once

// Sign tables of (-1)^n f^(n)(x) over a grid, complete-monotonicity verdicts,
// inequality and limit checks, convergence studies and negativity searches.
//
// Every entry carries an absolute error bound; verdicts only claim a sign
// when the bound leaves no doubt.

#include <string>
#include <vector>

#include "cmv/bigreal.hpp"
#include "cmv/function_id.hpp"
#include "cmv/numerics.hpp"
#include "cmv/precision.hpp"

namespace cmv {

enum class Spacing { Linear, Logarithmic };

std::string_view spacing_name(Spacing s);
Spacing parse_spacing(std::string_view text);  ///< "linear" / "log" / "logarithmic"

struct GridSpec {
  BigReal x_min = BigReal::parse("0.01");
  BigReal x_max = 1000;
  int count = 200;
  Spacing spacing = Spacing::Logarithmic;

  static GridSpec linear(const BigReal& lo, const BigReal& hi, int count);
  static GridSpec logarithmic(const BigReal& lo, const BigReal& hi, int count);

  /// Throws DomainError unless 0 < x_min < x_max and count >= 2.
  void validate() const;

  /// Strictly increasing points; the endpoints are exactly x_min and x_max.
  std::vector<BigReal> points() const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) = default;
};

inline constexpr int kDefaultNMax = 8;

struct TableEntry {
  BigReal value;  ///< (-1)^n f^(n)(x)
  BigReal err;    ///< >= 0
  bool inconclusive = false;  ///< finite differences did not reach err < |value|/10

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

struct DerivativeTable {
  FunctionId fid;
  GridSpec grid;
  int n_max = 0;
  std::vector<BigReal> xs;
  std::vector<std::vector<TableEntry>> entries;  ///< entries[n][i] at xs[i]

  const TableEntry& at(int n, std::size_t i) const { return entries[static_cast<std::size_t>(n)][i]; }
};

/// True when derivative_table has an analytic path for the family.
bool has_closed_form_derivatives(Family family);

/// Signed derivatives (-1)^n f^(n)(x), n = 0..n_max, at one point: the
/// closed form when available, finite differences otherwise.
std::vector<TableEntry> signed_derivatives(const FunctionId& fid, const BigReal& x, int n_max,
                                           const PrecisionConfig& cfg = {});

/// `threads` = 0 uses the hardware concurrency. The result does not depend on it.
DerivativeTable derivative_table(const FunctionId& fid, const GridSpec& grid, int n_max,
                                 const PrecisionConfig& cfg = {}, unsigned threads = 0);

/// Finite-difference table for an arbitrary function; `fid` is only a label.
DerivativeTable derivative_table(const ConfiguredFunction& f, const FunctionId& fid, const GridSpec& grid, int n_max,
                                 const PrecisionConfig& cfg = {}, unsigned threads = 0);

/// Finite-difference signed derivatives of fid's value, ignoring any closed form.
std::vector<TableEntry> fd_signed_derivatives(const ConfiguredFunction& f, const BigReal& x, int n_max,
                                              const PrecisionConfig& cfg);

enum class Verdict { AllNonnegative, ViolationsFound, Inconclusive };

std::string_view verdict_name(Verdict v);
Verdict parse_verdict(std::string_view text);

struct SignEntry {
  int n = 0;
  BigReal x;
  BigReal value;
  BigReal margin;  ///< value - err

  friend bool operator==(const SignEntry&, const SignEntry&) = default;
};

struct CMReport {
  FunctionId fid;
  GridSpec grid;
  int n_max = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<SignEntry> violations;    ///< value + err < 0
  std::vector<SignEntry> inconclusive;  ///< sign not resolved by the error bound
  BigReal min_margin;                   ///< min over the table of value - err
  int min_margin_n = 0;
  BigReal min_margin_x;

  friend bool operator==(const CMReport&, const CMReport&) = default;
};

/// AllNonnegative iff every value - err >= 0; ViolationsFound iff some
/// value + err < 0; Inconclusive otherwise.
CMReport summarize(const DerivativeTable& table);

CMReport check_cm(const FunctionId& fid, const GridSpec& grid, int n_max, const PrecisionConfig& cfg = {},
                  unsigned threads = 0);

struct LogCMReport {
  CMReport log_derivative;  ///< (-1)^n phi_alpha^(n), phi_alpha = (-log f_alpha)'
  CMReport function;        ///< (-1)^n f_alpha^(n) by finite differences
  /// False when the log table is all nonnegative but f_alpha itself shows a
  /// certain violation (log-CM implies CM).
  bool consistent = true;

  friend bool operator==(const LogCMReport&, const LogCMReport&) = default;
};

/// Log-complete-monotonicity check of f_alpha: phi_alpha over orders
/// 0..n_max, cross-checked against finite differences of f_alpha itself.
LogCMReport check_log_cm(const BigReal& alpha, const GridSpec& grid, int n_max, const PrecisionConfig& cfg = {},
                         unsigned threads = 0);

struct Witness {
  BigReal x;
  BigReal lhs;
  BigReal rhs;
  std::string label;  ///< which comparison, e.g. "m=3 lower"

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Checks lhs < rhs (or <=) at sampled points. The margin of one comparison
/// is (rhs - lhs - err)/|rhs|; worst_margin is the smallest and pass means
/// worst_margin > 0. Witnesses hold the worst comparison of each label plus
/// every failing one.
struct InequalityReport {
  std::string name;
  GridSpec grid;
  BigReal worst_margin;
  bool pass = false;
  std::vector<Witness> witnesses;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

/// m!/(2 x^(m+1)) < (-1)^m Phi^(m)(x) < m!/x^(m+1) for m = 0..m_max, plus
/// strict decrease of (-1)^m x^(m+1) Phi^(m)(x) along the grid.
InequalityReport verify_phi_double_inequality(const GridSpec& grid, int m_max, const PrecisionConfig& cfg = {});

struct LimitEstimate {
  Extrapolation at_zero;
  Extrapolation at_infinity;
};

/// Limits of (-1)^m x^(m+1) Phi^(m)(x) at 0+ and +inf: Neville extrapolation of
/// samples at x = 2^-j and x = 2^j (in u = 1/x), j = 5..20.
LimitEstimate phi_scaled_limits(int m, const PrecisionConfig& cfg = {});

struct ZeroLimits {
  Extrapolation order_m1;  ///< derivative of order m+1
  Extrapolation order_m2;  ///< derivative of order m+2
};

/// x -> 0+ limits of the raw derivatives of orders m+1 and m+2 of
/// (-1)^m x^(m+1) Phi^(m)(x), from samples at x = 2^-j, j = 5..20. m >= 1.
ZeroLimits derivative_limits_at_zero(int m, const PrecisionConfig& cfg = {});

/// The constants -m (m+1)! m! zeta(m+1) and -((m+1)!)^2 (m+1) (zeta(m+2) + zeta(m+1)).
ZeroLimits stated_zero_limit_constants(int m, const PrecisionConfig& cfg = {});

/// Exact Taylor values F^(m+1)(0) = -m (m+1)! m! zeta(m+1) and
/// F^(m+2)(0) = (m+2)! (m+1) (m+1)! zeta(m+2) for F(x) = (-1)^m x^(m+1) Phi^(m)(x).
ZeroLimits exact_zero_limit_constants(int m, const PrecisionConfig& cfg = {});

struct ConvergenceRow {
  int m = 0;
  BigReal scaled;  ///< f_m(z/m)/m!
  BigReal target;  ///< s(z)
  BigReal error;   ///< |scaled - target|
  BigReal error_bound;  ///< truncation bounds of both sides

  friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

/// |f_m(z/m)/m! - s(z)| for each m (m >= 1, z > 0).
std::vector<ConvergenceRow> convergence_study(const BigReal& z, const std::vector<int>& m_list,
                                              const PrecisionConfig& cfg = {});

enum class SearchStrategy { Grid, CoarseToFine };

std::string_view strategy_name(SearchStrategy s);
SearchStrategy parse_strategy(std::string_view text);

struct SearchRow {
  BigReal t;
  BigReal value;
  BigReal tail_bound;

  friend bool operator==(const SearchRow&, const SearchRow&) = default;
};

/// Samples of H or g_m whose sign is certain (|value| > tail_bound), sorted by
/// value ascending (ties by t). An absence of negative rows says nothing about
/// the function being nonnegative beyond the sampled points.
struct SearchResult {
  FunctionId fid;
  BigReal t_min;
  BigReal t_max;
  int points = 0;
  SearchStrategy strategy = SearchStrategy::Grid;
  long evaluated = 0;
  long uncertain = 0;  ///< samples dropped because |value| <= tail_bound
  std::vector<SearchRow> rows;

  std::vector<SearchRow> negatives() const;

  friend bool operator==(const SearchResult&, const SearchResult&) = default;
};

/// fid must be HLH or Gm. `points` uniform samples on [t_min, t_max] (one when
/// the range is degenerate); coarse-to-fine then refines around the 10 smallest
/// values, 3 passes. Non-positive t is skipped for g_m.
SearchResult search_negative(const FunctionId& fid, const BigReal& t_min, const BigReal& t_max, int points,
                             SearchStrategy strategy, const PrecisionConfig& cfg = {});

/// 1/2 <= theta1(x) <= 1/2 + 1/(12x).
InequalityReport verify_theta1_bounds(const GridSpec& grid, const PrecisionConfig& cfg = {});

/// 0 < (-1)^n theta1^(n)(x) <= (n-1)! (alpha + 1/2)/(x^n log x), n = 2..n_max,
/// grid points x > 1 (others are skipped); needs alpha >= -1/4.
InequalityReport verify_theta1_derivative_bound(const GridSpec& grid, int n_max, const BigReal& alpha,
                                                const PrecisionConfig& cfg = {});

/// (-1)^(n+1) (x psi(x))^(n+1) < (n-1)!/x^n for n = 1..n_max.
InequalityReport verify_alzer_inequality(const GridSpec& grid, int n_max, const PrecisionConfig& cfg = {});

/// f_m(t) >= m!/2 for m = 0..m_max on grid points t >= 2 log 3.
InequalityReport verify_fm_half_factorial_bound(const GridSpec& grid, int m_max, const PrecisionConfig& cfg = {});

/// 3x^2 - x cos x + sin x > 0.
InequalityReport verify_elementary_inequality(const GridSpec& grid, const PrecisionConfig& cfg = {});

struct LaplaceCheck {
  BigReal integral;
  BigReal integral_err;
  BigReal target;
  BigReal relative_error;
};

/// integral_0^inf g_m(t) e^(-xt) dt against phi_scaled(m, m, x), to relative tolerance `tol`.
LaplaceCheck laplace_check_g(int m, const BigReal& x, const BigReal& tol, const PrecisionConfig& cfg = {});

/// integral_0^inf Theta_m(t) e^(-xt) dt against phi_scaled(m, m-2, x). Theta_m
/// is itself a quadrature; its target is tol/100.
LaplaceCheck laplace_check_theta(int m, const BigReal& x, const BigReal& tol, const PrecisionConfig& cfg = {});

}  // namespace cmv
