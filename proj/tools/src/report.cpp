#include "cmv/report.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "cmv/errors.hpp"
#include "json.hpp"

#ifndef CMV_TOOL_VERSION
#define CMV_TOOL_VERSION "0.0.0"
#endif

namespace cmv {

namespace {

using json = nlohmann::ordered_json;

// ---- writing ----

json num(const BigReal& v) { return v.str(); }

std::string double_text(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, ptr);
}

json fid_json(const FunctionId& fid) {
  json j;
  j["family"] = std::string(family_name(fid.family));
  if (fid.uses_m()) j["m"] = fid.m;
  if (fid.uses_alpha()) j["alpha"] = num(fid.alpha);
  if (fid.uses_q()) j["q"] = num(fid.q);
  if (fid.uses_n()) j["n"] = fid.n_aux;
  return j;
}

json grid_json(const GridSpec& g) {
  return json{{"x_min", num(g.x_min)},
              {"x_max", num(g.x_max)},
              {"count", g.count},
              {"spacing", std::string(spacing_name(g.spacing))}};
}

json sign_entries(const std::vector<SignEntry>& entries) {
  json arr = json::array();
  for (const SignEntry& e : entries) {
    arr.push_back(json{{"n", e.n}, {"x", num(e.x)}, {"value", num(e.value)}, {"margin", num(e.margin)}});
  }
  return arr;
}

json cm_json(const CMReport& r) {
  return json{{"fid", fid_json(r.fid)},
              {"grid", grid_json(r.grid)},
              {"n_max", r.n_max},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"min_margin", num(r.min_margin)},
              {"min_margin_n", r.min_margin_n},
              {"min_margin_x", num(r.min_margin_x)},
              {"violations", sign_entries(r.violations)},
              {"inconclusive", sign_entries(r.inconclusive)}};
}

json payload_to_json(const Payload& p) {
  json j;
  j["kind"] = std::string(payload_kind(p));
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CMReport>) {
          j.update(cm_json(v));
        } else if constexpr (std::is_same_v<T, LogCMReport>) {
          j["log_derivative"] = cm_json(v.log_derivative);
          j["function"] = cm_json(v.function);
          j["consistent"] = v.consistent;
        } else if constexpr (std::is_same_v<T, InequalityReport>) {
          j["name"] = v.name;
          j["grid"] = grid_json(v.grid);
          j["worst_margin"] = num(v.worst_margin);
          j["pass"] = v.pass;
          json w = json::array();
          for (const Witness& x : v.witnesses) {
            w.push_back(json{{"label", x.label}, {"x", num(x.x)}, {"lhs", num(x.lhs)}, {"rhs", num(x.rhs)}});
          }
          j["witnesses"] = std::move(w);
        } else if constexpr (std::is_same_v<T, ConvergencePayload>) {
          j["z"] = num(v.z);
          json rows = json::array();
          for (const ConvergenceRow& r : v.rows) {
            rows.push_back(json{{"m", r.m},
                                {"error", num(r.error)},
                                {"scaled", num(r.scaled)},
                                {"target", num(r.target)},
                                {"error_bound", num(r.error_bound)}});
          }
          j["rows"] = std::move(rows);
        } else if constexpr (std::is_same_v<T, SearchResult>) {
          j["fid"] = fid_json(v.fid);
          j["t_min"] = num(v.t_min);
          j["t_max"] = num(v.t_max);
          j["points"] = v.points;
          j["strategy"] = std::string(strategy_name(v.strategy));
          j["evaluated"] = v.evaluated;
          j["uncertain"] = v.uncertain;
          json rows = json::array();
          for (const SearchRow& r : v.rows) {
            rows.push_back(json{{"t", num(r.t)}, {"value", num(r.value)}, {"tail_bound", num(r.tail_bound)}});
          }
          j["rows"] = std::move(rows);
        } else if constexpr (std::is_same_v<T, LimitsPayload>) {
          j["name"] = v.name;
          j["tolerance"] = num(v.tolerance);
          json rows = json::array();
          for (const LimitRow& r : v.rows) {
            rows.push_back(json{{"label", r.label},
                                {"m", r.m},
                                {"estimate", num(r.estimate)},
                                {"err", num(r.err)},
                                {"expected", num(r.expected)},
                                {"relative_error", num(r.relative_error)},
                                {"pass", r.pass}});
          }
          j["rows"] = std::move(rows);
        } else if constexpr (std::is_same_v<T, SuiteSummary>) {
          json rows = json::array();
          for (const SummaryRow& r : v.rows) {
            rows.push_back(json{{"check", r.check},
                                {"status", std::string(status_name(r.status))},
                                {"expected_pass", r.expected_pass},
                                {"detail", r.detail}});
          }
          j["rows"] = std::move(rows);
        }
      },
      p);
  return j;
}

json config_json(const RunConfig& c) {
  return json{{"precision",
               {{"digits", c.precision.digits},
                {"series_tol_exponent", double_text(c.precision.series_tol_exponent)},
                {"max_terms", c.precision.max_terms}}},
              {"grid", grid_json(c.grid)},
              {"n_max", c.n_max},
              {"output_path", c.output_path.generic_string()},
              {"format", std::string(format_name(c.format))}};
}

// ---- reading ----

BigReal read_num(const json& j, const char* key) { return BigReal::parse(j.at(key).get<std::string>()); }

FunctionId read_fid(const json& j) {
  FunctionId fid;
  fid.family = parse_family(j.at("family").get<std::string>());
  if (fid.uses_m()) fid.m = j.at("m").get<int>();
  if (fid.uses_alpha()) fid.alpha = read_num(j, "alpha");
  if (fid.uses_q()) fid.q = read_num(j, "q");
  if (fid.uses_n()) fid.n_aux = j.at("n").get<int>();
  return fid;
}

GridSpec read_grid(const json& j) {
  GridSpec g;
  g.x_min = read_num(j, "x_min");
  g.x_max = read_num(j, "x_max");
  g.count = j.at("count").get<int>();
  g.spacing = parse_spacing(j.at("spacing").get<std::string>());
  return g;
}

std::vector<SignEntry> read_sign_entries(const json& arr) {
  std::vector<SignEntry> out;
  for (const json& e : arr) {
    out.push_back(SignEntry{e.at("n").get<int>(), read_num(e, "x"), read_num(e, "value"), read_num(e, "margin")});
  }
  return out;
}

CMReport read_cm(const json& j) {
  CMReport r;
  r.fid = read_fid(j.at("fid"));
  r.grid = read_grid(j.at("grid"));
  r.n_max = j.at("n_max").get<int>();
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.min_margin = read_num(j, "min_margin");
  r.min_margin_n = j.at("min_margin_n").get<int>();
  r.min_margin_x = read_num(j, "min_margin_x");
  r.violations = read_sign_entries(j.at("violations"));
  r.inconclusive = read_sign_entries(j.at("inconclusive"));
  return r;
}

Payload read_payload(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cm") return read_cm(j);
  if (kind == "log_cm") {
    LogCMReport r;
    r.log_derivative = read_cm(j.at("log_derivative"));
    r.function = read_cm(j.at("function"));
    r.consistent = j.at("consistent").get<bool>();
    return r;
  }
  if (kind == "inequality") {
    InequalityReport r;
    r.name = j.at("name").get<std::string>();
    r.grid = read_grid(j.at("grid"));
    r.worst_margin = read_num(j, "worst_margin");
    r.pass = j.at("pass").get<bool>();
    for (const json& w : j.at("witnesses")) {
      r.witnesses.push_back(Witness{read_num(w, "x"), read_num(w, "lhs"), read_num(w, "rhs"), w.at("label").get<std::string>()});
    }
    return r;
  }
  if (kind == "convergence") {
    ConvergencePayload c;
    c.z = read_num(j, "z");
    for (const json& r : j.at("rows")) {
      ConvergenceRow row;
      row.m = r.at("m").get<int>();
      row.error = read_num(r, "error");
      row.scaled = read_num(r, "scaled");
      row.target = read_num(r, "target");
      row.error_bound = read_num(r, "error_bound");
      c.rows.push_back(std::move(row));
    }
    return c;
  }
  if (kind == "search") {
    SearchResult s;
    s.fid = read_fid(j.at("fid"));
    s.t_min = read_num(j, "t_min");
    s.t_max = read_num(j, "t_max");
    s.points = j.at("points").get<int>();
    s.strategy = parse_strategy(j.at("strategy").get<std::string>());
    s.evaluated = j.at("evaluated").get<long>();
    s.uncertain = j.at("uncertain").get<long>();
    for (const json& r : j.at("rows")) {
      s.rows.push_back(SearchRow{read_num(r, "t"), read_num(r, "value"), read_num(r, "tail_bound")});
    }
    return s;
  }
  if (kind == "limits") {
    LimitsPayload l;
    l.name = j.at("name").get<std::string>();
    l.tolerance = read_num(j, "tolerance");
    for (const json& r : j.at("rows")) {
      LimitRow row;
      row.label = r.at("label").get<std::string>();
      row.m = r.at("m").get<int>();
      row.estimate = read_num(r, "estimate");
      row.err = read_num(r, "err");
      row.expected = read_num(r, "expected");
      row.relative_error = read_num(r, "relative_error");
      row.pass = r.at("pass").get<bool>();
      l.rows.push_back(std::move(row));
    }
    return l;
  }
  if (kind == "summary") {
    SuiteSummary s;
    for (const json& r : j.at("rows")) {
      s.rows.push_back(SummaryRow{r.at("check").get<std::string>(), parse_status(r.at("status").get<std::string>()),
                                  r.at("expected_pass").get<bool>(), r.at("detail").get<std::string>()});
    }
    return s;
  }
  throw ParseError("unknown payload kind '" + kind + "'");
}

RunConfig read_config(const json& j) {
  RunConfig c;
  const json& p = j.at("precision");
  c.precision.digits = p.at("digits").get<int>();
  const std::string tol = p.at("series_tol_exponent").get<std::string>();
  auto [ptr, ec] = std::from_chars(tol.data(), tol.data() + tol.size(), c.precision.series_tol_exponent);
  if (ec != std::errc{} || ptr != tol.data() + tol.size()) throw ParseError("bad series_tol_exponent '" + tol + "'");
  c.precision.max_terms = p.at("max_terms").get<long>();
  c.precision.validate();
  PrecisionScope scope(c.precision.digits);
  c.grid = read_grid(j.at("grid"));
  c.n_max = j.at("n_max").get<int>();
  c.output_path = j.at("output_path").get<std::string>();
  c.format = parse_format(j.at("format").get<std::string>());
  return c;
}

// ---- CSV ----

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void cm_csv_rows(std::ostringstream& out, const std::string& table, const CMReport& r) {
  const std::string prefix = csv_field(table) + "," + csv_field(r.fid.to_string()) + "," +
                             std::string(verdict_name(r.verdict)) + ",";
  out << prefix << "min_margin," << r.min_margin_n << "," << r.min_margin_x.str() << ",," << r.min_margin.str() << "\n";
  for (const SignEntry& e : r.violations) {
    out << prefix << "violation," << e.n << "," << e.x.str() << "," << e.value.str() << "," << e.margin.str() << "\n";
  }
  for (const SignEntry& e : r.inconclusive) {
    out << prefix << "inconclusive," << e.n << "," << e.x.str() << "," << e.value.str() << "," << e.margin.str()
        << "\n";
  }
}

constexpr const char* kCmHeader = "table,fid,verdict,status,n,x,value,margin\n";

}  // namespace

std::string_view format_name(Format f) { return f == Format::Json ? "json" : "csv"; }

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw ParseError("unknown format '" + std::string(text) + "' (expected json or csv)");
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

CheckStatus parse_status(std::string_view text) {
  for (CheckStatus s : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Inconclusive}) {
    if (status_name(s) == text) return s;
  }
  throw ParseError("unknown status '" + std::string(text) + "'");
}

bool SuiteSummary::all_expected_pass() const {
  for (const SummaryRow& r : rows) {
    if (r.expected_pass && r.status != CheckStatus::Pass) return false;
  }
  return true;
}

std::string_view payload_kind(const Payload& p) {
  static constexpr std::string_view kinds[] = {"cm", "log_cm", "inequality", "convergence", "search", "limits",
                                               "summary"};
  return kinds[p.index()];
}

std::string_view tool_version() { return CMV_TOOL_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportEnvelope make_envelope(const RunConfig& config, Payload payload) {
  return ReportEnvelope{std::string(tool_version()), utc_timestamp(), config, std::move(payload)};
}

std::string payload_json(const Payload& p) { return payload_to_json(p).dump(2); }

std::string to_json(const ReportEnvelope& e) {
  json j;
  j["tool_version"] = e.tool_version;
  j["timestamp"] = e.timestamp;
  j["config"] = config_json(e.config);
  j["payload"] = payload_to_json(e.payload);
  return j.dump(2) + "\n";
}

ReportEnvelope parse_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    ReportEnvelope e;
    e.tool_version = j.at("tool_version").get<std::string>();
    e.timestamp = j.at("timestamp").get<std::string>();
    e.config = read_config(j.at("config"));
    PrecisionScope scope(e.config.precision.digits);
    e.payload = read_payload(j.at("payload"));
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(std::string("malformed report: ") + ex.what());
  } catch (const DomainError& ex) {
    throw ParseError(std::string("malformed report: ") + ex.what());
  }
}

std::string to_csv(const Payload& p) {
  std::ostringstream out;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CMReport>) {
          out << kCmHeader;
          cm_csv_rows(out, "cm", v);
        } else if constexpr (std::is_same_v<T, LogCMReport>) {
          out << kCmHeader;
          cm_csv_rows(out, "log_derivative", v.log_derivative);
          cm_csv_rows(out, "function", v.function);
        } else if constexpr (std::is_same_v<T, InequalityReport>) {
          out << "name,label,x,lhs,rhs,pass,worst_margin\n";
          for (const Witness& w : v.witnesses) {
            out << csv_field(v.name) << "," << csv_field(w.label) << "," << w.x.str() << "," << w.lhs.str() << ","
                << w.rhs.str() << "," << (v.pass ? "true" : "false") << "," << v.worst_margin.str() << "\n";
          }
        } else if constexpr (std::is_same_v<T, ConvergencePayload>) {
          out << "m,error,scaled,target,error_bound\n";
          for (const ConvergenceRow& r : v.rows) {
            out << r.m << "," << r.error.str() << "," << r.scaled.str() << "," << r.target.str() << ","
                << r.error_bound.str() << "\n";
          }
        } else if constexpr (std::is_same_v<T, SearchResult>) {
          out << "t,value,tail_bound\n";
          for (const SearchRow& r : v.rows) out << r.t.str() << "," << r.value.str() << "," << r.tail_bound.str() << "\n";
        } else if constexpr (std::is_same_v<T, LimitsPayload>) {
          out << "name,label,m,estimate,err,expected,relative_error,pass\n";
          for (const LimitRow& r : v.rows) {
            out << csv_field(v.name) << "," << csv_field(r.label) << "," << r.m << "," << r.estimate.str() << ","
                << r.err.str() << "," << r.expected.str() << "," << r.relative_error.str() << ","
                << (r.pass ? "true" : "false") << "\n";
          }
        } else if constexpr (std::is_same_v<T, SuiteSummary>) {
          out << "check,status,expected_pass,detail\n";
          for (const SummaryRow& r : v.rows) {
            out << csv_field(r.check) << "," << status_name(r.status) << "," << (r.expected_pass ? "true" : "false")
                << "," << csv_field(r.detail) << "\n";
          }
        }
      },
      p);
  return out.str();
}

std::string csv_schema() {
  return R"(CSV output: one header row, then data rows. Numbers are decimal strings
that parse back to the exact value at the run's precision.

cm, log_cm      table,fid,verdict,status,n,x,value,margin
                table is "cm", or "log_derivative"/"function" for log_cm.
                status is "min_margin" (one row per table: the entry with the
                smallest value - err; value column empty), "violation"
                (value + err < 0) or "inconclusive" (sign not resolved).
                margin = value - err.
inequality      name,label,x,lhs,rhs,pass,worst_margin
                one row per witness: the worst comparison of each label
                followed by every failing one. The check is lhs < rhs.
convergence     m,error,scaled,target,error_bound
                error = |scaled - target|, scaled = f_m(z/m)/m!, target = s(z).
search          t,value,tail_bound
                sign-certain samples (|value| > tail_bound), value ascending.
limits          name,label,m,estimate,err,expected,relative_error,pass
summary         check,status,expected_pass,detail
                status is pass, fail or inconclusive.
)";
}

std::string serialize(const ReportEnvelope& e) {
  return e.config.format == Format::Json ? to_json(e) : to_csv(e.payload);
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  if (!fs::exists(dir)) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

}  // namespace cmv
