#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <sstream>

#include "cmv/cli.hpp"
#include "cmv/report.hpp"
#include "generators.hpp"

using namespace cmv;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return CliRun{code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cmv-cli-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) {
    if (const char* old = std::getenv(name)) old_ = old;
    ::setenv(name, value, 1);
  }
  ~ScopedEnv() {
    if (old_.empty()) {
      ::unsetenv(name_);
    } else {
      ::setenv(name_, old_.c_str(), 1);
    }
  }

 private:
  const char* name_;
  std::string old_;
};

}  // namespace

TEST(CliEval, PrintsValues) {
  CliRun phi = run({"eval", "phi", "1.0"});
  EXPECT_EQ(phi.code, kExitOk);
  EXPECT_EQ(phi.out.rfind("0.64493406", 0), 0u) << phi.out;
  CliRun theta = run({"eval", "theta1", "1.0"});
  EXPECT_EQ(theta.out.rfind("0.57721566", 0), 0u) << theta.out;
  CliRun s = run({"eval", "s", "0"});
  EXPECT_EQ(s.out, "0.5\n");
  CliRun scaled = run({"eval", "phi-scaled", "2", "--m", "1", "--alpha", "2"});
  EXPECT_EQ(scaled.code, kExitOk);
  EXPECT_EQ(scaled.out.rfind("0.", 0), 0u) << scaled.out;
}

TEST(CliEval, NegativeValuesCarryASign) {
  CliRun r = run({"eval", "phi-scaled", "1", "--m", "1", "--alpha", "0"});
  EXPECT_EQ(r.code, kExitOk);
  CliRun d = run({"eval", "f-alpha", "2", "--alpha", "-0.25"});
  EXPECT_EQ(d.code, kExitOk);
  CliRun k1 = run({"eval", "k1", "1"});
  if (k1.code == kExitOk) {
    EXPECT_EQ(k1.out[0], '-') << k1.out;
  }
}

TEST(CliEval, ErrorsMapToExitCodes) {
  CliRun domain = run({"eval", "phi", "-1"});
  EXPECT_EQ(domain.code, kExitDomainError);
  EXPECT_NE(domain.err.find("-1"), std::string::npos) << domain.err;
  EXPECT_EQ(run({"eval", "phi", "one"}).code, kExitParseError);
  EXPECT_EQ(run({"eval", "no-such-family", "1"}).code, kExitParseError);
  EXPECT_EQ(run({"eval", "phi-scaled", "1", "--m", "x"}).code, kExitParseError);
  EXPECT_EQ(run({"eval", "phi-q", "1", "--q", "1"}).code, kExitDomainError);
  EXPECT_EQ(run({"eval", "phi-q", "1", "--q", "-0.5"}).code, kExitDomainError);
  EXPECT_EQ(run({"eval", "phi-q", "1", "--q", "2"}).out, run({"eval", "phi-q", "1", "--q", "0.5"}).out);
  EXPECT_EQ(run({"eval"}).code, kExitParseError);
  EXPECT_EQ(run({"no-such-command"}).code, kExitParseError);
  EXPECT_EQ(run({"eval", "phi", "1", "--bogus"}).code, kExitParseError);
}

TEST(CliGlobal, VersionSchemaAndHelp) {
  CliRun v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_EQ(v.out, std::string(tool_version()) + "\n");
  CliRun s = run({"--schema"});
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_EQ(s.out, csv_schema());
  CliRun h = run({"--help"});
  EXPECT_EQ(h.code, kExitOk);
  EXPECT_NE((h.out + h.err).find("check-cm"), std::string::npos);
}

TEST(CliGlobal, PrecisionFromFlagAndEnvironment) {
  CliRun wide = run({"--precision", "80", "eval", "phi", "1"});
  EXPECT_EQ(wide.code, kExitOk);
  EXPECT_GE(wide.out.size(), 78u);
  {
    ScopedEnv env("CM_VERIFY_PRECISION", "40");
    CliRun r = run({"eval", "phi", "1"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_LE(r.out.size(), 44u);
    EXPECT_GE(r.out.size(), 38u);
  }
  {
    ScopedEnv env("CM_VERIFY_PRECISION", "20");
    EXPECT_EQ(run({"eval", "phi", "1"}).code, kExitDomainError);
  }
  EXPECT_EQ(run({"--precision", "29", "eval", "phi", "1"}).code, kExitDomainError);
  EXPECT_EQ(run({"--precision", "lots", "eval", "phi", "1"}).code, kExitParseError);
}

TEST(CliCheckCm, VerdictExitCodes) {
  CliRun ok = run({"check-cm", "phi-scaled", "--m", "2", "--alpha", "0", "--count", "60"});
  EXPECT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(lines(ok.err).front().rfind("AllNonnegative phi-scaled --m 2 --alpha 0 ", 0), 0u) << ok.err;
  EXPECT_NE(ok.out.find("\"payload\""), std::string::npos);

  CliRun bad = run({"check-cm", "phi-scaled", "--m", "1", "--alpha", "2", "--nmax", "4"});
  EXPECT_EQ(bad.code, kExitViolations);
  EXPECT_EQ(bad.err.rfind("ViolationsFound", 0), 0u) << bad.err;

  CliRun unsure = run({"check-cm", "f-m", "--m", "2", "--xmin", "200", "--xmax", "210", "--count", "3", "--nmax", "2"});
  EXPECT_EQ(unsure.code, kExitInconclusive);
  EXPECT_EQ(unsure.err.rfind("Inconclusive", 0), 0u) << unsure.err;

  EXPECT_EQ(run({"check-cm", "phi", "--xmin", "5", "--xmax", "1"}).code, kExitDomainError);
  EXPECT_EQ(run({"check-cm", "phi", "--spacing", "cubic"}).code, kExitParseError);
  EXPECT_EQ(run({"check-cm", "phi", "--format", "xml"}).code, kExitParseError);
}

TEST(CliCheckCm, LogCompleteMonotonicityOfFAlpha) {
  CliRun r = run({"check-cm", "f-alpha", "--alpha", "-0.25", "--xmin", "0.05", "--xmax", "50", "--count", "40",
               "--nmax", "6"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> summary = lines(r.err);
  ASSERT_GE(summary.size(), 2u);
  EXPECT_EQ(summary[0].rfind("AllNonnegative", 0), 0u);
  EXPECT_EQ(summary[1].rfind("cross-check ", 0), 0u);
}

TEST(CliCheckCm, OutFileIsWrittenAtomicallyAndParses) {
  fs::path dir = scratch_dir("out");
  fs::path file = dir / "phi.json";
  CliRun r = run({"check-cm", "phi", "--count", "20", "--nmax", "3", "--out", file.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("AllNonnegative", 0), 0u) << r.out;
  EXPECT_TRUE(r.err.empty());
  ReportEnvelope e = parse_json(slurp(file));
  ASSERT_TRUE(std::holds_alternative<CMReport>(e.payload));
  EXPECT_EQ(std::get<CMReport>(e.payload).verdict, Verdict::AllNonnegative);
  EXPECT_EQ(e.config.output_path, file);
  int entries = 0;
  for ([[maybe_unused]] const auto& x : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1);

  CliRun csv = run({"check-cm", "phi", "--count", "20", "--nmax", "3", "--format", "csv", "--out",
                 (dir / "phi.csv").string()});
  EXPECT_EQ(csv.code, kExitOk);
  EXPECT_NE(csv_schema().find(lines(slurp(dir / "phi.csv")).front()), std::string::npos);

  CliRun unwritable = run({"check-cm", "phi", "--count", "5", "--nmax", "1", "--out", (dir / "phi.json" / "x.json").string()});
  EXPECT_EQ(unwritable.code, kExitDomainError);
  fs::remove_all(dir);
}

TEST(CliConverge, CsvRowsShrink) {
  CliRun r = run({"converge", "--z", "5", "--m", "10,20,40,60", "--format", "csv"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  std::vector<std::string> rows = lines(r.out);
  ASSERT_EQ(rows.size(), 5u);
  auto error_of = [&](const std::string& row) {
    std::vector<std::string> cols;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    std::vector<std::string> head;
    std::stringstream hs(rows[0]);
    for (std::string c; std::getline(hs, c, ',');) head.push_back(c);
    auto it = std::find(head.begin(), head.end(), "error");
    PrecisionScope scope(50);
    return BigReal::parse(cols.at(static_cast<std::size_t>(it - head.begin())));
  };
  EXPECT_LT(error_of(rows[4]), error_of(rows[1]));
  EXPECT_EQ(run({"converge", "--z", "5", "--m", "10,x"}).code, kExitParseError);
  EXPECT_EQ(run({"converge", "--z", "0", "--m", "10"}).code, kExitDomainError);
}

TEST(CliSearch, RowsSortedAndDegenerateRange) {
  PrecisionScope scope(50);
  CliRun r = run({"--precision", "30", "search", "--fn", "H", "--range", "0:100", "--points", "500"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  ReportEnvelope e = parse_json(r.out);
  const SearchResult& s = std::get<SearchResult>(e.payload);
  for (std::size_t i = 1; i < s.rows.size(); ++i) EXPECT_LE(s.rows[i - 1].value, s.rows[i].value);

  CliRun single = run({"--precision", "30", "search", "--fn", "H", "--range", "50:50"});
  EXPECT_EQ(single.code, kExitOk);
  EXPECT_EQ(std::get<SearchResult>(parse_json(single.out).payload).rows.size(), 1u);

  CliRun g = run({"--precision", "30", "search", "--fn", "g-m", "--m", "2", "--range", "0:30", "--points", "50",
               "--format", "csv"});
  EXPECT_EQ(g.code, kExitOk) << g.err;
  EXPECT_EQ(run({"search", "--fn", "k1", "--range", "0:1"}).code, kExitParseError);
  EXPECT_EQ(run({"search", "--fn", "H", "--range", "0-1"}).code, kExitParseError);
  EXPECT_EQ(run({"search", "--fn", "g-m", "--range", "0:1"}).code, kExitParseError);
}

TEST(CliVerifyPaper, QuickSuiteWritesOneReportPerCheck) {
  fs::path dir = scratch_dir("suite");
  CliRun r = run({"verify-paper", "--quick", "--out", dir.string()});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  ASSERT_TRUE(fs::exists(dir / "summary.json"));
  PrecisionScope scope(50);
  ReportEnvelope summary = parse_json(slurp(dir / "summary.json"));
  const SuiteSummary& rows = std::get<SuiteSummary>(summary.payload);
  EXPECT_TRUE(rows.all_expected_pass());
  for (const char* check : {"scaled-phi-degree", "scaled-phi-cm", "phi-double-inequality", "phi-limits", "phi-q-cm",
                            "f-alpha-log-cm", "theta1-bounds", "theta1-derivative-bound"}) {
    bool found = false;
    for (const SummaryRow& row : rows.rows) found = found || row.check == check;
    EXPECT_TRUE(found) << check;
    EXPECT_NE(r.out.find(check), std::string::npos) << check;
  }
  EXPECT_EQ(summary.config.n_max, 4);
  int reports = 0;
  for (const auto& x : fs::directory_iterator(dir)) {
    EXPECT_EQ(x.path().extension(), ".json");
    ++reports;
  }
  EXPECT_GT(reports, 10);
  fs::remove_all(dir);
}
