#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "finsler/metrics/metric_spec.hpp"

namespace finsler::metrics {

inline constexpr std::string_view kMetricSchema = "finsler-metric/v1";

/// Metric definition file (JSON):
///
///   schema              "finsler-metric/v1" (required at top level)
///   variant             "riemannian" | "randers" | "warped"
///   dimension           n (top level: 2..4; fibers may be 1)
///   a_matrix            n x n symmetric positive definite (riemannian, randers)
///   a_gradient          optional n matrices: a_ij += sum_k x^k a_gradient[k]_ij
///   conformal           optional {"kind": "bump", "amplitude", "center", "width"}
///                       or {"kind": "stereographic", "radius"}
///   b_covector          n entries (randers)
///   b_gradient          optional n x n: b_i += sum_k x^k b_gradient[k][i]
///   C                   warp frequency > 0 (warped)
///   fiber               nested metric object of dimension n - 1 (warped)
///   chart_domain        optional {"lower": [...], "upper": [...]}
///   expected_curvature  optional constant flag curvature the fixture claims
///   special_solution    optional {"K", "B", "initial_value", "initial_slope"}
///   name                optional label
///
/// Unknown keys are rejected. Errors name the offending field path, and JSON
/// syntax errors report line and column.
MetricSpec parse_metric(std::string_view text);
MetricSpec load_metric(const std::filesystem::path& path);

MetricSpec metric_from_json(const nlohmann::json& j);
nlohmann::json metric_to_json(const MetricSpec& spec);

/// 64-bit FNV-1a of the definition file bytes, as 16 hex digits.
std::string fingerprint(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

}  // namespace finsler::metrics
