#include "finsler/verify/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "finsler/error.hpp"

namespace finsler::verify {

namespace {

constexpr std::pair<Suite, std::string_view> kNames[] = {
    {Suite::flag_curvature, "flag-curvature"}, {Suite::hessian, "hessian"},   {Suite::decomposition, "decomposition"},
    {Suite::constant_form, "constant-form"},   {Suite::ode, "ode"},           {Suite::torsion, "torsion"},
    {Suite::focusing, "focusing"},             {Suite::all, "all"},
};

double parse_number(std::string_view text, std::string_view what) {
  // from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("cannot parse " + std::string(what) + " value '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (const auto& [s, n] : kNames) {
    if (n == name) return s;
  }
  std::string known;
  for (const auto& [s, n] : kNames) known += (known.empty() ? "" : ", ") + std::string(n);
  throw InvalidArgument("unknown suite '" + std::string(name) + "' (expected one of: " + known + ")");
}

std::string_view suite_name(Suite s) {
  for (const auto& [k, n] : kNames) {
    if (k == s) return n;
  }
  return "?";
}

const std::vector<Suite>& concrete_suites() {
  static const std::vector<Suite> all{Suite::flag_curvature, Suite::hessian, Suite::decomposition,
                                      Suite::constant_form,  Suite::ode,     Suite::torsion,
                                      Suite::focusing};
  return all;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::json;
  if (name == "csv") return Format::csv;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (expected json or csv)");
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      // flag-curvature
      {"flag-curvature-constant", 1e-6},
      {"flag-curvature-variance", 1e-4},
      {"flagpole-annihilation", 1e-8},
      {"flag-form-symmetry", 1e-8},
      {"flag-invariance", 1e-6},
      // hessian
      {"hessian-equation", 1e-6},
      {"gradient-rho", 1e-10},
      // decomposition
      {"decomposition-block1", 1e-6},
      {"decomposition-block2", 1e-6},
      {"decomposition-block3", 1e-6},
      {"decomposition-frequency", 1e-6},
      {"decomposition-warp", 1e-10},
      {"decomposition-substituted", 1e-6},
      // constant-form
      {"constant-form", 1e-6},
      {"constant-form-sensitivity", 0.1},
      {"curvature-antisymmetry", 1e-8},
      // ode
      {"ode-residual", 1e-6},
      {"critical-point-spacing", 1e-3},
      {"critical-points", 1e-12},
      {"unit-speed", 1e-6},
      // torsion
      {"torsion-vanishing", 1e-10},
      {"torsion-ode", 1e-10},
      {"torsion-synthetic", 1e-8},
      {"parallel-transport", 1e-5},
      // focusing
      {"focusing-arrival-spread", 1e-4},
      {"focusing-arrival-error", 1e-4},
      {"focusing-length", 1e-3},
      {"ray-spread-linearity", 1e-6},
  };
  return t;
}

std::string tolerance_variable(std::string_view tag) {
  std::string v = "FINSLER_TOL_";
  for (char c : tag) v += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return v;
}

std::pair<std::string, double> parse_tolerance(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw InvalidArgument("tolerance must be key=value, got '" + std::string(text) + "'");
  std::string key(text.substr(0, eq));
  if (!default_tolerances().contains(key)) throw InvalidArgument("unknown tolerance key '" + key + "'");
  return {key, parse_number(text.substr(eq + 1), key)};
}

std::map<std::string, double> resolve_tolerances(const std::map<std::string, double>& overrides) {
  std::map<std::string, double> out = default_tolerances();
  for (auto& [tag, value] : out) {
    if (const char* env = std::getenv(tolerance_variable(tag).c_str())) value = parse_number(env, tolerance_variable(tag));
  }
  for (const auto& [tag, value] : overrides) {
    auto it = out.find(tag);
    if (it == out.end()) throw InvalidArgument("unknown tolerance key '" + tag + "'");
    it->second = value;
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  if (!(step > 0.0)) throw InvalidArgument("step must be positive");
}

}  // namespace finsler::verify
