#include "cmv/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "cmv/errors.hpp"
#include "cmv/paper_functions.hpp"
#include "cmv/report.hpp"
#include "cmv/suite.hpp"

namespace cmv {

namespace {

int parse_int(const std::string& what, const std::string& text) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(what + " expects an integer, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::AllNonnegative:
      return kExitOk;
    case Verdict::ViolationsFound:
      return kExitViolations;
    case Verdict::Inconclusive:
      return kExitInconclusive;
  }
  return kExitInconclusive;
}

std::string summary_line(const CMReport& r) {
  return std::string(verdict_name(r.verdict)) + " " + r.fid.to_string() + " " + r.min_margin.str(10);
}

// Everything the command line can set; only one subcommand runs per call.
struct Options {
  std::string precision;
  unsigned threads = 0;
  bool schema = false;
  bool version = false;

  std::string family;
  std::string x;
  std::string m;
  std::string alpha;
  std::string q;
  std::string n;

  std::string x_min;
  std::string x_max;
  int count = -1;
  std::string spacing;
  int n_max = -1;
  std::string out;
  std::string format = "json";

  bool quick = false;

  std::string z;
  std::string m_list;

  std::string fn;
  std::string range;
  int points = 10000;
  std::string strategy = "grid";
};

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void add_fid_flags(CLI::App* sub);
  void add_report_flags(CLI::App* sub, bool grid);
  FunctionId function_id() const;
  RunConfig run_config(const PrecisionConfig& precision) const;
  void emit(const RunConfig& rc, Payload payload, const std::string& summary);

  int cmd_eval(const PrecisionConfig& precision);
  int cmd_check_cm(const PrecisionConfig& precision);
  int cmd_verify_paper(const PrecisionConfig& precision);
  int cmd_converge(const PrecisionConfig& precision);
  int cmd_search(const PrecisionConfig& precision);

  std::ostream& out_;
  std::ostream& err_;
  Options o_;
};

void Cli::add_fid_flags(CLI::App* sub) {
  sub->add_option("--m", o_.m, "Derivative order m");
  sub->add_option("--alpha", o_.alpha, "Scaling exponent or alpha parameter");
  sub->add_option("--q", o_.q, "q parameter");
  sub->add_option("--n", o_.n, "Order n of g-n");
}

void Cli::add_report_flags(CLI::App* sub, bool grid) {
  if (grid) {
    sub->add_option("--xmin", o_.x_min, "Grid start (default 0.01)");
    sub->add_option("--xmax", o_.x_max, "Grid end (default 1000)");
    sub->add_option("--count", o_.count, "Grid points (default 200)");
    sub->add_option("--spacing", o_.spacing, "linear or log (default log)");
    sub->add_option("--nmax", o_.n_max, "Highest derivative order (default 8)");
  }
  sub->add_option("--out", o_.out, "Output file (directory for verify-paper)");
  sub->add_option("--format", o_.format, "json or csv")->capture_default_str();
}

FunctionId Cli::function_id() const {
  std::vector<std::string> tokens{o_.family};
  auto flag = [&](const char* name, const std::string& value) {
    if (value.empty()) return;
    tokens.push_back(name);
    tokens.push_back(value);
  };
  flag("--m", o_.m);
  flag("--alpha", o_.alpha);
  flag("--q", o_.q);
  flag("--n", o_.n);
  FunctionId fid = parse_function_id(tokens);
  fid.validate();
  return fid;
}

RunConfig Cli::run_config(const PrecisionConfig& precision) const {
  RunConfig rc;
  rc.precision = precision;
  if (!o_.x_min.empty()) rc.grid.x_min = BigReal::parse(o_.x_min);
  if (!o_.x_max.empty()) rc.grid.x_max = BigReal::parse(o_.x_max);
  if (o_.count >= 0) rc.grid.count = o_.count;
  if (!o_.spacing.empty()) rc.grid.spacing = parse_spacing(o_.spacing);
  rc.grid.validate();
  if (o_.n_max >= 0) rc.n_max = o_.n_max;
  rc.output_path = o_.out;
  rc.format = parse_format(o_.format);
  return rc;
}

void Cli::emit(const RunConfig& rc, Payload payload, const std::string& summary) {
  const std::string text = serialize(make_envelope(rc, std::move(payload)));
  if (rc.output_path.empty()) {
    out_ << text;
    err_ << summary << "\n";
  } else {
    write_atomically(rc.output_path, text);
    out_ << summary << "\n";
  }
}

int Cli::cmd_eval(const PrecisionConfig& precision) {
  const FunctionId fid = function_id();
  const BigReal x = BigReal::parse(o_.x);
  const Approx v = evaluate(fid, x, precision);
  out_ << v.value.str(precision.digits) << "\n";
  return kExitOk;
}

int Cli::cmd_check_cm(const PrecisionConfig& precision) {
  const FunctionId fid = function_id();
  const RunConfig rc = run_config(precision);
  if (fid.family == Family::FAlphaLog) {
    LogCMReport r = check_log_cm(fid.alpha, rc.grid, rc.n_max, precision, o_.threads);
    Verdict v = r.log_derivative.verdict;
    std::string summary = summary_line(r.log_derivative) + "\ncross-check " + summary_line(r.function);
    if (!r.consistent) {
      summary += "\nlog-CM verdict contradicts a certain violation of f_alpha itself";
      v = Verdict::Inconclusive;
    }
    emit(rc, std::move(r), summary);
    return verdict_exit(v);
  }
  CMReport r = check_cm(fid, rc.grid, rc.n_max, precision, o_.threads);
  const Verdict v = r.verdict;
  const std::string summary = summary_line(r);
  emit(rc, std::move(r), summary);
  return verdict_exit(v);
}

int Cli::cmd_verify_paper(const PrecisionConfig& precision) {
  namespace fs = std::filesystem;
  RunConfig rc = run_config(precision);
  const fs::path dir = o_.out.empty() ? fs::path("cmverify-report") : fs::path(o_.out);
  rc.output_path = dir;
  const RunConfig used = suite_config(rc, o_.quick);
  SuiteResult result = run_verification_suite(rc, o_.quick, o_.threads);
  const std::string ext = rc.format == Format::Json ? ".json" : ".csv";
  fs::create_directories(dir);
  for (auto& [stem, payload] : result.reports) {
    write_atomically(dir / (stem + ext), serialize(make_envelope(used, std::move(payload))));
  }
  write_atomically(dir / ("summary" + ext), serialize(make_envelope(used, result.summary)));

  std::size_t width = 5;
  for (const SummaryRow& r : result.summary.rows) width = std::max(width, r.check.size());
  out_ << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(14) << "status"
       << "detail\n";
  for (const SummaryRow& r : result.summary.rows) {
    std::string status(status_name(r.status));
    if (!r.expected_pass) status += " (info)";
    out_ << std::left << std::setw(static_cast<int>(width) + 2) << r.check << std::setw(14) << status << r.detail
         << "\n";
  }
  out_ << "reports written to " << dir.string() << "\n";
  return result.summary.all_expected_pass() ? kExitOk : kExitViolations;
}

int Cli::cmd_converge(const PrecisionConfig& precision) {
  RunConfig rc = run_config(precision);
  ConvergencePayload p;
  p.z = BigReal::parse(o_.z);
  std::vector<int> ms;
  for (const std::string& part : split(o_.m_list, ',')) ms.push_back(parse_int("--m", part));
  p.rows = convergence_study(p.z, ms, precision);
  std::string summary = "converge z=" + p.z.str(10);
  if (!p.rows.empty()) {
    summary += " error(m=" + std::to_string(p.rows.front().m) + ")=" + p.rows.front().error.str(6) + " error(m=" +
               std::to_string(p.rows.back().m) + ")=" + p.rows.back().error.str(6);
  }
  emit(rc, std::move(p), summary);
  return kExitOk;
}

int Cli::cmd_search(const PrecisionConfig& precision) {
  RunConfig rc = run_config(precision);
  FunctionId fid;
  if (o_.fn == "H") {
    fid = FunctionId::of(Family::HLH);
  } else if (o_.fn == "g-m") {
    if (o_.m.empty()) throw ParseError("search --fn g-m needs --m");
    fid = FunctionId::g_m(parse_int("--m", o_.m));
  } else {
    throw ParseError("search --fn expects H or g-m, got '" + o_.fn + "'");
  }
  const std::vector<std::string> bounds = split(o_.range, ':');
  if (bounds.size() != 2) throw ParseError("--range expects LO:HI, got '" + o_.range + "'");
  const BigReal lo = BigReal::parse(bounds[0]);
  const BigReal hi = BigReal::parse(bounds[1]);
  SearchResult r = search_negative(fid, lo, hi, o_.points, parse_strategy(o_.strategy), precision);
  const std::string summary = "search " + fid.to_string() + " [" + lo.str(10) + ", " + hi.str(10) + "]: " +
                              std::to_string(r.rows.size()) + " sign-certain samples, " +
                              std::to_string(r.negatives().size()) + " negative, " + std::to_string(r.uncertain) +
                              " uncertain";
  emit(rc, std::move(r), summary);
  return kExitOk;
}

int Cli::run(const std::vector<std::string>& args) {
  CLI::App app{"Arbitrary-precision checks of complete monotonicity for polygamma-based functions", "cmverify"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_option("--precision", o_.precision, "Working precision in decimal digits (default: CM_VERIFY_PRECISION or 50)");
  app.add_option("--threads", o_.threads, "Worker threads for table construction (0 = all cores)");
  app.add_flag("--schema", o_.schema, "Print the CSV schema of every report kind and exit");
  app.add_flag("--version", o_.version, "Print the tool version and exit");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a function at one point");
  eval->add_option("family", o_.family, "Function family (phi, phi-scaled, phi-q, f-alpha, f-m, ...)")->required();
  eval->add_option("x", o_.x, "Argument")->required();
  add_fid_flags(eval);

  CLI::App* check = app.add_subcommand("check-cm", "Complete-monotonicity sign table over a grid");
  check->add_option("family", o_.family, "Function family")->required();
  add_fid_flags(check);
  add_report_flags(check, true);

  CLI::App* verify = app.add_subcommand("verify-paper", "Run the whole verification suite");
  verify->add_flag("--quick", o_.quick, "Coarse grid (40 points) and n_max = 4");
  add_report_flags(verify, true);

  CLI::App* converge = app.add_subcommand("converge", "Convergence of f_m(z/m)/m! to s(z)");
  converge->add_option("--z", o_.z, "Point z > 0")->required();
  converge->add_option("--m", o_.m_list, "Comma-separated increasing orders, e.g. 10,20,40,60")->required();
  add_report_flags(converge, false);

  CLI::App* search = app.add_subcommand("search", "Sign-certain samples of H or g_m, value ascending");
  search->add_option("--fn", o_.fn, "H or g-m")->required();
  search->add_option("--m", o_.m, "Order m for g-m");
  search->add_option("--range", o_.range, "LO:HI")->required();
  search->add_option("--points", o_.points, "Grid samples")->capture_default_str();
  search->add_option("--strategy", o_.strategy, "grid or coarse-to-fine")->capture_default_str();
  add_report_flags(search, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitParseError;
  }

  if (o_.version) {
    out_ << tool_version() << "\n";
    return kExitOk;
  }
  if (o_.schema) {
    out_ << csv_schema();
    return kExitOk;
  }

  try {
    PrecisionConfig precision =
        o_.precision.empty() ? default_precision_from_env()
                             : PrecisionConfig::with_digits(parse_int("--precision", o_.precision));
    precision.validate();
    PrecisionScope scope(precision.digits);
    if (eval->parsed()) return cmd_eval(precision);
    if (check->parsed()) return cmd_check_cm(precision);
    if (verify->parsed()) return cmd_verify_paper(precision);
    if (converge->parsed()) return cmd_converge(precision);
    if (search->parsed()) return cmd_search(precision);
    err_ << app.help();
    return kExitParseError;
  } catch (const ParseError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const DomainError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const PrecisionError& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const std::exception& e) {
    err_ << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace cmv
