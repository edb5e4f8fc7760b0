#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "finsler/verify/config.hpp"

namespace finsler::verify {

inline constexpr std::string_view kReportSchema = "finsler-report/v1";
inline constexpr std::string_view kRngName = "mt19937_64";

/// How a check's statistic is compared with its tolerance.
///   at_most   pass iff max <= tolerance (residual checks)
///   at_least  pass iff min >= tolerance (detector-sensitivity checks)
///   record    no pass/fail; values kept for regression only (always passes)
enum class Comparison { at_most, at_least, record };

struct CheckRecord {
  std::string suite;
  std::string tag;
  std::string description;
  int samples = 0;
  double max = 0.0;
  double mean = 0.0;
  double min = 0.0;
  double tolerance = 0.0;
  Comparison comparison = Comparison::at_most;
  bool pass = false;

  bool operator==(const CheckRecord&) const = default;
};

struct SkippedCheck {
  std::string suite;
  std::string tag;
  std::string reason;

  bool operator==(const SkippedCheck&) const = default;
};

struct VerificationReport {
  std::string suite;
  std::string metric_path;
  std::string metric_name;
  std::string fingerprint;
  int samples = 0;
  std::uint64_t seed = 0;
  double step = 0.0;
  std::string rng{kRngName};
  std::string tool_version;
  std::vector<CheckRecord> checks;
  std::vector<SkippedCheck> skipped;
  std::optional<double> runtime_seconds;

  bool pass() const;
  bool operator==(const VerificationReport&) const = default;
};

/// pass flag from the statistics and comparison.
bool evaluate(const CheckRecord& c);

/// Summarizes per-sample values into a record (max/mean/min; NaN counts as failure).
CheckRecord summarize(std::string suite, std::string tag, std::string description, const std::vector<double>& values,
                      double tolerance, Comparison comparison = Comparison::at_most);

nlohmann::json to_json(const VerificationReport& r);
/// Throws SchemaError on malformed input.
VerificationReport report_from_json(const nlohmann::json& j);

/// Columns: suite,tag,comparison,samples,max,mean,min,tolerance,pass
void write_csv(const VerificationReport& r, std::ostream& out);
void write_json(const VerificationReport& r, std::ostream& out);
/// Throws IoError when the path cannot be written.
void export_report(const VerificationReport& r, Format format, const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_double(double v);

}  // namespace finsler::verify
