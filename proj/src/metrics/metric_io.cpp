#include "finsler/metrics/metric_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "finsler/error.hpp"
#include "finsler/jets/jet_space.hpp"

namespace finsler::metrics {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw SchemaError("field '" + (path.empty() ? std::string("<root>") : path) + "': " + message);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> vector_of(const json& j, std::size_t size, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (j.size() != size) fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> matrix_of(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  if (j.size() != n) fail(path, "expected " + std::to_string(n) + " rows, got " + std::to_string(j.size()));
  std::vector<double> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = vector_of(j[i], n, path + "[" + std::to_string(i) + "]");
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(join(path, key), "unknown field");
  }
}

const json& required(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) fail(join(path, key), "missing required field");
  return *it;
}

Riemannian riemannian_of(const json& j, std::size_t n, const std::string& path) {
  Riemannian r;
  r.constant = matrix_of(required(j, "a_matrix", path), n, join(path, "a_matrix"));
  if (auto it = j.find("a_gradient"); it != j.end()) {
    const std::string p = join(path, "a_gradient");
    if (!it->is_array() || it->size() != n) fail(p, "expected " + std::to_string(n) + " matrices");
    for (std::size_t k = 0; k < n; ++k) {
      auto m = matrix_of((*it)[k], n, p + "[" + std::to_string(k) + "]");
      r.gradient.insert(r.gradient.end(), m.begin(), m.end());
    }
  }
  if (auto it = j.find("conformal"); it != j.end()) {
    const std::string p = join(path, "conformal");
    if (!it->is_object()) fail(p, "expected an object");
    const json& kind = required(*it, "kind", p);
    if (!kind.is_string()) fail(join(p, "kind"), "expected a string");
    if (kind == "bump") {
      reject_unknown(*it, {"kind", "amplitude", "center", "width"}, p);
      r.conformal.kind = Conformal::Kind::bump;
      r.conformal.amplitude = number(required(*it, "amplitude", p), join(p, "amplitude"));
      r.conformal.center = vector_of(required(*it, "center", p), n, join(p, "center"));
      r.conformal.width = number(required(*it, "width", p), join(p, "width"));
    } else if (kind == "stereographic") {
      reject_unknown(*it, {"kind", "radius"}, p);
      r.conformal.kind = Conformal::Kind::stereographic;
      r.conformal.radius = number(required(*it, "radius", p), join(p, "radius"));
    } else {
      fail(join(p, "kind"), "expected \"bump\" or \"stereographic\"");
    }
  }
  return r;
}

MetricSpec parse_object(const json& j, const std::string& path, bool top_level) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> allowed{"variant",     "dimension",          "a_matrix",        "a_gradient",
                                "conformal",   "b_covector",         "b_gradient",      "C",
                                "fiber",       "chart_domain",       "expected_curvature",
                                "special_solution", "name"};
  if (top_level) {
    allowed.insert("schema");
    const json& schema = required(j, "schema", path);
    if (!schema.is_string() || schema.get<std::string>() != kMetricSchema) {
      fail(join(path, "schema"), "expected \"" + std::string(kMetricSchema) + "\"");
    }
  }
  reject_unknown(j, allowed, path);

  const json& dim = required(j, "dimension", path);
  if (!dim.is_number_integer()) fail(join(path, "dimension"), "expected an integer");
  const int n = dim.get<int>();
  if (n < (top_level ? 2 : 1) || n > jets::kMaxVars / 2) {
    fail(join(path, "dimension"), "must be in [" + std::to_string(top_level ? 2 : 1) + ", " +
                                      std::to_string(jets::kMaxVars / 2) + "]");
  }
  const auto un = static_cast<std::size_t>(n);

  const json& variant = required(j, "variant", path);
  if (!variant.is_string()) fail(join(path, "variant"), "expected a string");
  const std::string v = variant.get<std::string>();

  auto forbid = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys) {
      if (j.contains(k)) fail(join(path, k), "not allowed for variant \"" + v + "\"");
    }
  };

  MetricSpec::Family family = Riemannian{};
  if (v == "riemannian") {
    forbid({"b_covector", "b_gradient", "C", "fiber"});
    family = riemannian_of(j, un, path);
  } else if (v == "randers") {
    forbid({"C", "fiber"});
    Randers r;
    r.alpha = riemannian_of(j, un, path);
    r.b = vector_of(required(j, "b_covector", path), un, join(path, "b_covector"));
    if (auto it = j.find("b_gradient"); it != j.end()) {
      r.b_gradient = matrix_of(*it, un, join(path, "b_gradient"));
    }
    family = std::move(r);
  } else if (v == "warped") {
    forbid({"a_matrix", "a_gradient", "conformal", "b_covector", "b_gradient"});
    Warped w;
    w.C = number(required(j, "C", path), join(path, "C"));
    if (!(w.C > 0.0)) fail(join(path, "C"), "must be positive");
    w.fiber = std::make_shared<const MetricSpec>(parse_object(required(j, "fiber", path), join(path, "fiber"), false));
    if (w.fiber->dimension() != n - 1) {
      fail(join(path, "fiber.dimension"), "must be " + std::to_string(n - 1));
    }
    family = std::move(w);
  } else {
    fail(join(path, "variant"), "expected \"riemannian\", \"randers\" or \"warped\"");
  }

  ChartDomain chart;
  if (auto it = j.find("chart_domain"); it != j.end()) {
    const std::string p = join(path, "chart_domain");
    if (!it->is_object()) fail(p, "expected an object");
    reject_unknown(*it, {"lower", "upper"}, p);
    if (auto lo = it->find("lower"); lo != it->end()) chart.lower = vector_of(*lo, un, join(p, "lower"));
    if (auto hi = it->find("upper"); hi != it->end()) chart.upper = vector_of(*hi, un, join(p, "upper"));
  }

  MetricSpec spec = [&] {
    try {
      return MetricSpec(n, std::move(family), std::move(chart));
    } catch (const SchemaError& e) {
      fail(path, e.what());
    } catch (const InvalidMetric& e) {
      fail(v == "randers" ? join(path, "b_covector") : path, e.what());
    }
  }();

  if (auto it = j.find("expected_curvature"); it != j.end()) {
    spec.expected_curvature = number(*it, join(path, "expected_curvature"));
  }
  if (auto it = j.find("special_solution"); it != j.end()) {
    const std::string p = join(path, "special_solution");
    if (!it->is_object()) fail(p, "expected an object");
    reject_unknown(*it, {"K", "B", "initial_value", "initial_slope"}, p);
    SolutionParameters s;
    s.K = number(required(*it, "K", p), join(p, "K"));
    s.B = number(required(*it, "B", p), join(p, "B"));
    s.initial_value = number(required(*it, "initial_value", p), join(p, "initial_value"));
    s.initial_slope = number(required(*it, "initial_slope", p), join(p, "initial_slope"));
    spec.solution = s;
  }
  return spec;
}

json matrix_json(const std::vector<double>& a, std::size_t n) {
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(std::vector<double>(a.begin() + static_cast<std::ptrdiff_t>(i * n),
                                       a.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
  }
  return rows;
}

void riemannian_json(const Riemannian& r, std::size_t n, json& out) {
  out["a_matrix"] = matrix_json(r.constant, n);
  if (!r.gradient.empty()) {
    json g = json::array();
    for (std::size_t k = 0; k < n; ++k) {
      g.push_back(matrix_json(std::vector<double>(r.gradient.begin() + static_cast<std::ptrdiff_t>(k * n * n),
                                                  r.gradient.begin() + static_cast<std::ptrdiff_t>((k + 1) * n * n)),
                              n));
    }
    out["a_gradient"] = g;
  }
  switch (r.conformal.kind) {
    case Conformal::Kind::none:
      break;
    case Conformal::Kind::bump:
      out["conformal"] = {{"kind", "bump"},
                          {"amplitude", r.conformal.amplitude},
                          {"center", r.conformal.center},
                          {"width", r.conformal.width}};
      break;
    case Conformal::Kind::stereographic:
      out["conformal"] = {{"kind", "stereographic"}, {"radius", r.conformal.radius}};
      break;
  }
}

json object_json(const MetricSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  json out;
  out["dimension"] = spec.dimension();
  const auto& family = spec.family();
  if (const auto* r = std::get_if<Riemannian>(&family)) {
    out["variant"] = "riemannian";
    riemannian_json(*r, n, out);
  } else if (const auto* r = std::get_if<Randers>(&family)) {
    out["variant"] = "randers";
    riemannian_json(r->alpha, n, out);
    out["b_covector"] = r->b;
    if (!r->b_gradient.empty()) out["b_gradient"] = matrix_json(r->b_gradient, n);
  } else {
    const auto& w = std::get<Warped>(family);
    out["variant"] = "warped";
    out["C"] = w.C;
    out["fiber"] = object_json(*w.fiber);
  }
  if (!spec.chart().lower.empty() || !spec.chart().upper.empty()) {
    json c = json::object();
    if (!spec.chart().lower.empty()) c["lower"] = spec.chart().lower;
    if (!spec.chart().upper.empty()) c["upper"] = spec.chart().upper;
    out["chart_domain"] = c;
  }
  if (spec.expected_curvature) out["expected_curvature"] = *spec.expected_curvature;
  if (spec.solution) {
    out["special_solution"] = {{"K", spec.solution->K},
                               {"B", spec.solution->B},
                               {"initial_value", spec.solution->initial_value},
                               {"initial_slope", spec.solution->initial_slope}};
  }
  return out;
}

}  // namespace

MetricSpec metric_from_json(const json& j) { return parse_object(j, "", true); }

json metric_to_json(const MetricSpec& spec) {
  json out = object_json(spec);
  out["schema"] = std::string(kMetricSchema);
  return out;
}

MetricSpec parse_metric(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column for the diagnostic.
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw SchemaError("metric file is not valid JSON (line " + std::to_string(line) + ", column " +
                      std::to_string(column) + "): " + e.what());
  }
  return metric_from_json(j);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MetricSpec load_metric(const std::filesystem::path& path) { return parse_metric(read_file(path)); }

std::string fingerprint(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace finsler::metrics
