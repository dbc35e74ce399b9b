#pragma once

// Report envelopes and their JSON / CSV forms.
//
// Every BigReal is written as a decimal string that parses back to the same
// value at the configured precision, so parse_json(to_json(e)) == e.

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "cmv/cm_engine.hpp"
#include "cmv/precision.hpp"

namespace cmv {

enum class Format { Json, Csv };

std::string_view format_name(Format f);
Format parse_format(std::string_view text);

struct RunConfig {
  PrecisionConfig precision;
  GridSpec grid;
  int n_max = kDefaultNMax;
  std::filesystem::path output_path;
  Format format = Format::Json;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

struct ConvergencePayload {
  BigReal z;
  std::vector<ConvergenceRow> rows;

  friend bool operator==(const ConvergencePayload&, const ConvergencePayload&) = default;
};

struct LimitRow {
  std::string label;  ///< e.g. "x->0" or "order m+2"
  int m = 0;
  BigReal estimate;
  BigReal err;
  BigReal expected;
  BigReal relative_error;
  bool pass = false;

  friend bool operator==(const LimitRow&, const LimitRow&) = default;
};

struct LimitsPayload {
  std::string name;
  BigReal tolerance;  ///< relative
  std::vector<LimitRow> rows;

  friend bool operator==(const LimitsPayload&, const LimitsPayload&) = default;
};

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string_view status_name(CheckStatus s);
CheckStatus parse_status(std::string_view text);

struct SummaryRow {
  std::string check;
  CheckStatus status = CheckStatus::Inconclusive;
  bool expected_pass = true;  ///< counts toward the suite's exit code
  std::string detail;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct SuiteSummary {
  std::vector<SummaryRow> rows;

  /// True when every expected-pass row passed.
  bool all_expected_pass() const;

  friend bool operator==(const SuiteSummary&, const SuiteSummary&) = default;
};

using Payload = std::variant<CMReport, LogCMReport, InequalityReport, ConvergencePayload, SearchResult, LimitsPayload,
                             SuiteSummary>;

/// "cm", "log_cm", "inequality", "convergence", "search", "limits", "summary".
std::string_view payload_kind(const Payload& p);

struct ReportEnvelope {
  std::string tool_version;
  std::string timestamp;  ///< UTC, ISO 8601
  RunConfig config;
  Payload payload;

  friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

/// Library version baked in at build time.
std::string_view tool_version();

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

ReportEnvelope make_envelope(const RunConfig& config, Payload payload);

/// Pretty-printed JSON of the whole envelope.
std::string to_json(const ReportEnvelope& e);

/// JSON of the payload alone, as it appears inside the envelope.
std::string payload_json(const Payload& p);

/// Parses an envelope; numbers are read at the envelope's configured precision.
/// Throws ParseError on malformed input.
ReportEnvelope parse_json(std::string_view text);

/// CSV of the payload with a header row; see csv_schema().
std::string to_csv(const Payload& p);

/// Header and column meaning of every CSV payload kind.
std::string csv_schema();

/// Serializes in config.format.
std::string serialize(const ReportEnvelope& e);

/// Writes `contents` through a temporary file in the same directory and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace cmv
