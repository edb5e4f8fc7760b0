#pragma once

#include <string>

#include "finsler/metrics/metric_spec.hpp"
#include "finsler/verify/config.hpp"
#include "finsler/verify/report.hpp"

namespace finsler::verify {

/// Loads the metric named by the config and runs its suite. Throws
/// SchemaError / IoError for bad metric files and InvalidArgument for bad
/// configuration.
VerificationReport run_suite(const ExperimentConfig& config);

/// Runs the suite on an already constructed metric; `fingerprint` and `path`
/// are copied into the report.
VerificationReport run_suite(const metrics::MetricSpec& spec, const ExperimentConfig& config,
                             const std::string& fingerprint = "", const std::string& path = "");

std::string tool_version();

}  // namespace finsler::verify
