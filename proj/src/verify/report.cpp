#include "finsler/verify/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "finsler/error.hpp"

namespace finsler::verify {

using nlohmann::json;

namespace {

std::string_view comparison_name(Comparison c) {
  switch (c) {
    case Comparison::at_most:
      return "at_most";
    case Comparison::at_least:
      return "at_least";
    case Comparison::record:
      return "record";
  }
  return "?";
}

Comparison parse_comparison(const std::string& s) {
  if (s == "at_most") return Comparison::at_most;
  if (s == "at_least") return Comparison::at_least;
  if (s == "record") return Comparison::record;
  throw SchemaError("unknown comparison '" + s + "'");
}

// Non-finite statistics are stored as strings so the JSON stays valid.
json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double number_from(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  const auto s = v.get<std::string>();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  throw SchemaError(std::string("field '") + key + "': expected a number");
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool evaluate(const CheckRecord& c) {
  switch (c.comparison) {
    case Comparison::at_most:
      return c.max <= c.tolerance;
    case Comparison::at_least:
      return c.min >= c.tolerance;
    case Comparison::record:
      return true;
  }
  return false;
}

CheckRecord summarize(std::string suite, std::string tag, std::string description, const std::vector<double>& values,
                      double tolerance, Comparison comparison) {
  CheckRecord c;
  c.suite = std::move(suite);
  c.tag = std::move(tag);
  c.description = std::move(description);
  c.samples = static_cast<int>(values.size());
  c.tolerance = tolerance;
  c.comparison = comparison;
  if (!values.empty()) {
    c.max = -std::numeric_limits<double>::infinity();
    c.min = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    bool nan = false;
    for (double v : values) {
      if (std::isnan(v)) nan = true;
      c.max = std::max(c.max, v);
      c.min = std::min(c.min, v);
      sum += v;
    }
    c.mean = sum / static_cast<double>(values.size());
    if (nan) c.max = c.min = c.mean = std::numeric_limits<double>::quiet_NaN();
  }
  c.pass = evaluate(c);
  return c;
}

bool VerificationReport::pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"suite", c.suite},
                      {"tag", c.tag},
                      {"description", c.description},
                      {"samples", c.samples},
                      {"max", number_json(c.max)},
                      {"mean", number_json(c.mean)},
                      {"min", number_json(c.min)},
                      {"tolerance", number_json(c.tolerance)},
                      {"comparison", comparison_name(c.comparison)},
                      {"pass", c.pass}});
  }
  json skipped = json::array();
  for (const auto& s : r.skipped) skipped.push_back({{"suite", s.suite}, {"tag", s.tag}, {"reason", s.reason}});
  json out{{"schema", kReportSchema},
           {"suite", r.suite},
           {"metric", {{"path", r.metric_path}, {"name", r.metric_name}, {"fingerprint", r.fingerprint}}},
           {"samples", r.samples},
           {"seed", r.seed},
           {"step", r.step},
           {"rng", r.rng},
           {"tool_version", r.tool_version},
           {"checks", checks},
           {"skipped", skipped},
           {"pass", r.pass()}};
  if (r.runtime_seconds) out["runtime_seconds"] = *r.runtime_seconds;
  return out;
}

VerificationReport report_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema) throw SchemaError("field 'schema': expected finsler-report/v1");
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    const json& m = j.at("metric");
    r.metric_path = m.at("path").get<std::string>();
    r.metric_name = m.at("name").get<std::string>();
    r.fingerprint = m.at("fingerprint").get<std::string>();
    r.samples = j.at("samples").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.step = j.at("step").get<double>();
    r.rng = j.at("rng").get<std::string>();
    r.tool_version = j.at("tool_version").get<std::string>();
    for (const json& c : j.at("checks")) {
      CheckRecord rec;
      rec.suite = c.at("suite").get<std::string>();
      rec.tag = c.at("tag").get<std::string>();
      rec.description = c.at("description").get<std::string>();
      rec.samples = c.at("samples").get<int>();
      rec.max = number_from(c, "max");
      rec.mean = number_from(c, "mean");
      rec.min = number_from(c, "min");
      rec.tolerance = number_from(c, "tolerance");
      rec.comparison = parse_comparison(c.at("comparison").get<std::string>());
      rec.pass = c.at("pass").get<bool>();
      r.checks.push_back(std::move(rec));
    }
    for (const json& s : j.at("skipped")) {
      r.skipped.push_back({s.at("suite").get<std::string>(), s.at("tag").get<std::string>(),
                           s.at("reason").get<std::string>()});
    }
    if (auto it = j.find("runtime_seconds"); it != j.end()) r.runtime_seconds = it->get<double>();
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed report: ") + e.what());
  }
}

void write_json(const VerificationReport& r, std::ostream& out) { out << to_json(r).dump(2) << '\n'; }

void write_csv(const VerificationReport& r, std::ostream& out) {
  out << "suite,tag,comparison,samples,max,mean,min,tolerance,pass\n";
  for (const auto& c : r.checks) {
    out << c.suite << ',' << c.tag << ',' << comparison_name(c.comparison) << ',' << c.samples << ','
        << format_double(c.max) << ',' << format_double(c.mean) << ',' << format_double(c.min) << ','
        << format_double(c.tolerance) << ',' << (c.pass ? "true" : "false") << '\n';
  }
}

void export_report(const VerificationReport& r, Format format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == Format::json) {
    write_json(r, out);
  } else {
    write_csv(r, out);
  }
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace finsler::verify
