#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finsler::verify {

enum class Suite { flag_curvature, hessian, decomposition, constant_form, ode, torsion, focusing, all };

/// "flag-curvature", "hessian", ... ; throws InvalidArgument for unknown names.
Suite parse_suite(std::string_view name);
std::string_view suite_name(Suite s);
/// The seven concrete suites in report order.
const std::vector<Suite>& concrete_suites();

enum class Format { json, csv };
Format parse_format(std::string_view name);

/// Default tolerance per check tag. Every check a suite can emit has an entry.
const std::map<std::string, double>& default_tolerances();

/// Defaults, then FINSLER_TOL_<TAG> environment variables (tag upper-cased,
/// '-' -> '_'), then the explicit overrides. Throws InvalidArgument for
/// unknown tags or unparseable values.
std::map<std::string, double> resolve_tolerances(const std::map<std::string, double>& overrides);

/// "tag=value" -> (tag, value); throws InvalidArgument.
std::pair<std::string, double> parse_tolerance(std::string_view text);

/// Environment variable consulted for a tag.
std::string tolerance_variable(std::string_view tag);

struct ExperimentConfig {
  std::filesystem::path metric;
  Suite suite = Suite::all;
  int samples = 100;
  std::uint64_t seed = 1;
  double step = 1e-3;
  std::map<std::string, double> tolerances;  // explicit overrides only
  std::optional<std::filesystem::path> output;
  Format format = Format::json;
  /// Worker threads for sample evaluation; 0 picks the hardware count.
  unsigned threads = 0;
  /// Include wall-clock runtime in the report (breaks byte-identical reruns).
  bool timing = false;

  /// samples >= 1, step > 0. Throws InvalidArgument.
  void validate() const;
};

}  // namespace finsler::verify
