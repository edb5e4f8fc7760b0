// Command-line front end.
//
//   finsler verify <suite> --metric <file> [--samples N] [--seed S] [--step H]
//                  [--out <path>] [--format csv|json] [--tol key=val]...
//   finsler trace --metric <file> --x a,b,.. --y a,b,.. --length L [--step H]
//                 [--frame a,b,..]... --out <path>
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 for usage,
// schema or I/O errors.

#include <CLI11.hpp>

#include <iostream>

#include "finsler/error.hpp"
#include "finsler/geodesics/geodesic.hpp"
#include "finsler/metrics/metric_io.hpp"
#include "finsler/verify/suites.hpp"

namespace {

using namespace finsler;

int run_verify(const std::string& suite, const std::string& metric, int samples, std::uint64_t seed, double step,
               const std::string& out, const std::string& format, const std::vector<std::string>& tols,
               unsigned threads, bool timing) {
  verify::ExperimentConfig cfg;
  cfg.suite = verify::parse_suite(suite);
  cfg.metric = metric;
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.step = step;
  cfg.threads = threads;
  cfg.timing = timing;
  cfg.format = verify::parse_format(format);
  for (const auto& t : tols) cfg.tolerances.insert(verify::parse_tolerance(t));
  // Resolve early so bad environment overrides are usage errors.
  verify::resolve_tolerances(cfg.tolerances);
  if (!out.empty()) cfg.output = out;

  const auto report = verify::run_suite(cfg);
  if (cfg.output) {
    verify::export_report(report, cfg.format, *cfg.output);
  } else if (cfg.format == verify::Format::json) {
    verify::write_json(report, std::cout);
  } else {
    verify::write_csv(report, std::cout);
  }
  for (const auto& c : report.checks) {
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.suite << '/' << c.tag << "  max=" << verify::format_double(c.max)
              << " tol=" << verify::format_double(c.tolerance) << '\n';
  }
  for (const auto& s : report.skipped) std::cerr << "SKIP " << s.suite << '/' << s.tag << "  (" << s.reason << ")\n";
  return report.pass() ? 0 : 1;
}

int run_trace(const std::string& metric, const std::vector<double>& x, const std::vector<double>& y, double length,
              double step, const std::vector<std::vector<double>>& frame, const std::string& out) {
  const auto spec = metrics::load_metric(metric);
  const auto start = geodesics::unit_line_element(spec, {x, y});
  const auto trace = geodesics::integrate_geodesic(spec, start, length, step, frame);
  geodesics::write_trace_csv(trace, std::filesystem::path(out));
  if (trace.truncated) std::cerr << "trace truncated at t=" << trace.length() << ": " << trace.truncation_reason << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finsler geometry verification engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", finsler::verify::tool_version());

  auto* verify = app.add_subcommand("verify", "run a verification suite on a metric file");
  std::string suite, metric, out, format = "json";
  int samples = 100;
  std::uint64_t seed = 1;
  double step = 1e-3;
  std::vector<std::string> tols;
  unsigned threads = 0;
  bool timing = false;
  verify->add_option("suite", suite,
                     "flag-curvature | hessian | decomposition | constant-form | ode | torsion | focusing | all")
      ->required();
  verify->add_option("--metric", metric, "metric definition file (finsler-metric/v1)")->required();
  verify->add_option("--samples", samples, "random samples per suite")->capture_default_str();
  verify->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  verify->add_option("--step", step, "geodesic step and second-difference grid")->capture_default_str();
  verify->add_option("--out", out, "report path (default: stdout)");
  verify->add_option("--format", format, "json | csv")->capture_default_str();
  verify->add_option("--tol", tols, "tolerance override tag=value (repeatable)");
  verify->add_option("--threads", threads, "worker threads (0 = all cores)")->capture_default_str();
  verify->add_flag("--timing", timing, "record runtime in the report");

  auto* trace = app.add_subcommand("trace", "integrate one unit-speed geodesic and export it as CSV");
  std::vector<double> tx, ty;
  std::vector<std::vector<double>> frame;
  double length = 1.0;
  trace->add_option("--metric", metric, "metric definition file")->required();
  trace->add_option("--x", tx, "start point")->delimiter(',')->required();
  trace->add_option("--y", ty, "start direction (normalized to F = 1)")->delimiter(',')->required();
  trace->add_option("--length", length, "arc length")->capture_default_str();
  trace->add_option("--step", step, "RK4 step")->capture_default_str();
  trace->add_option("--frame", frame, "parallel vector to transport (repeatable)")->delimiter(',');
  trace->add_option("--out", out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(suite, metric, samples, seed, step, out, format, tols, threads, timing);
    return run_trace(metric, tx, ty, length, step, frame, out);
  } catch (const finsler::SchemaError& e) {
    std::cerr << "error: invalid metric file: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
