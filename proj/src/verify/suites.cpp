#include "finsler/verify/suites.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "finsler/error.hpp"
#include "finsler/geodesics/along.hpp"
#include "finsler/geometry/curvature.hpp"
#include "finsler/geometry/hessian.hpp"
#include "finsler/metrics/evaluate.hpp"
#include "finsler/metrics/metric_io.hpp"
#include "sampling.hpp"

#ifndef FINSLER_VERSION
#define FINSLER_VERSION "0.0.0"
#endif

namespace finsler::verify {

using geometry::Vector;
using metrics::LineElement;
using metrics::MetricSpec;
using std::numbers::pi;

namespace {

// Directions drawn per chart point by the Hessian suite.
constexpr int kDirectionsPerPoint = 50;
// Geodesic counts for the along-geodesic suites (each trace costs thousands
// of spray evaluations).
constexpr int kMaxOdeGeodesics = 16;
constexpr int kMaxTorsionGeodesics = 8;
constexpr int kFocusingCount = 8;

struct Context {
  const MetricSpec& spec;
  const ExperimentConfig& config;
  std::map<std::string, double> tol;
  VerificationReport& report;
  std::string suite;

  void add(const std::string& tag, const std::string& description, const std::vector<double>& values,
           Comparison cmp = Comparison::at_most) {
    report.checks.push_back(summarize(suite, tag, description, values, tol.at(tag), cmp));
  }
  void skip(const std::string& tag, const std::string& reason) { report.skipped.push_back({suite, tag, reason}); }
  detail::Rng rng(std::uint64_t index) const {
    // Per-suite stream id (FNV-1a of the suite name) keeps suites independent.
    std::uint64_t stream = 0xcbf29ce484222325ULL;
    for (char c : suite) stream = (stream ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    return detail::Rng(config.seed, stream, index);
  }
  template <class F>
  auto map(int count, F f) const {
    return detail::parallel_map(count, config.threads, f);
  }
};

std::size_t dim(const MetricSpec& spec) { return static_cast<std::size_t>(spec.dimension()); }

LineElement sample_element(const MetricSpec& spec, detail::Rng& rng) {
  const Vector x = detail::sample_point(spec, rng);
  return {x, detail::sample_direction(dim(spec), rng)};
}

double max_abs(const Vector& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

/// Offset (in t) of the radial starts from the pole: 0.05, or more when the
/// pole margin demands it.
double pole_offset(double C) { return std::max(0.05, metrics::kPoleMargin / C); }

// ---------------------------------------------------------------- flag curvature

void flag_curvature_suite(Context& cx) {
  const auto& spec = cx.spec;
  const int N = cx.config.samples;
  struct Sample {
    double K, annihilation, symmetry, invariance;
  };
  const auto samples = cx.map(N, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    const auto el = sample_element(spec, rng);
    const auto c = geometry::curvature(spec, el);
    Sample s{};
    Vector X;
    for (;;) {
      X = detail::sample_direction(dim(spec), rng);
      try {
        s.K = geometry::flag_curvature(c, el.y, X);
        break;
      } catch (const DegenerateFlag&) {
      }
    }
    s.annihilation = max_abs(geometry::apply(c.riemann_flag, el.y));
    const Vector Y = detail::sample_direction(dim(spec), rng);
    s.symmetry = std::abs(geometry::bilinear(c.frame.g, geometry::apply(c.riemann_flag, X), Y) -
                          geometry::bilinear(c.frame.g, geometry::apply(c.riemann_flag, Y), X));
    for (auto [lambda, mu] : {std::pair{2.0, 0.0}, {1.0, 3.0}, {-1.0, 1.0}}) {
      Vector Z(X.size());
      for (std::size_t k = 0; k < Z.size(); ++k) Z[k] = lambda * X[k] + mu * el.y[k];
      s.invariance = std::max(s.invariance, std::abs(geometry::flag_curvature(c, el.y, Z) - s.K) / std::max(1.0, std::abs(s.K)));
    }
    return s;
  });

  std::vector<double> ks, ann, sym, inv;
  for (const auto& s : samples) {
    ks.push_back(s.K);
    ann.push_back(s.annihilation);
    sym.push_back(s.symmetry);
    inv.push_back(s.invariance);
  }
  if (spec.expected_curvature) {
    std::vector<double> dev;
    for (double k : ks) dev.push_back(std::abs(k - *spec.expected_curvature));
    cx.add("flag-curvature-constant", "|K(x,y,X) - declared constant curvature| over random flags", dev);
  } else {
    cx.skip("flag-curvature-constant", "metric declares no expected_curvature");
  }
  double var = 0.0;
  if (ks.size() > 1) {
    const double mean = std::accumulate(ks.begin(), ks.end(), 0.0) / static_cast<double>(ks.size());
    for (double k : ks) var += (k - mean) * (k - mean);
    var /= static_cast<double>(ks.size() - 1);
  }
  CheckRecord rec = summarize(cx.suite, "flag-curvature-variance",
                              "sample variance of K over random flags (constancy detector)", {var},
                              cx.tol.at("flag-curvature-variance"));
  rec.samples = static_cast<int>(ks.size());
  cx.report.checks.push_back(rec);
  cx.add("flagpole-annihilation", "max |R_y y|", ann);
  cx.add("flag-form-symmetry", "|g(R_y X, Y) - g(R_y Y, X)|", sym);
  cx.add("flag-invariance", "relative change of K under X -> lambda X + mu y", inv);
}

// ---------------------------------------------------------------- hessian

// The fallback rho = x^1 only solves the equation on flat charts, so a
// non-warped metric must declare its solution for the residual to mean anything.
bool has_solution(const MetricSpec& spec) { return spec.solution || spec.is_warped(); }

constexpr const char* kNoSolution = "non-warped metric declares no special_solution";

void hessian_suite(Context& cx) {
  const auto& spec = cx.spec;
  if (!has_solution(spec)) {
    cx.skip("hessian-equation", kNoSolution);
    cx.skip("gradient-rho", kNoSolution);
    return;
  }
  const auto sol = metrics::default_solution(spec);
  const int N = cx.config.samples;
  struct Sample {
    double hessian, gradient;
  };
  const auto samples = cx.map(N, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    const Vector x = detail::sample_point(spec, rng);
    Sample s{};
    for (int d = 0; d < kDirectionsPerPoint; ++d) {
      const LineElement el{x, detail::sample_direction(dim(spec), rng)};
      const auto f = geometry::horizontal_connection(spec, el);
      s.hessian = std::max(s.hessian, geometry::hessian_residual(f, x[0], sol));
      if (spec.is_warped()) {
        const double d1 = sol.derivative(1, x[0]);
        for (int k = 0; k < f.n; ++k) {
          s.gradient = std::max(s.gradient, std::abs(f.g_inv(k, 0) * d1 - (k == 0 ? d1 : 0.0)));
        }
      }
    }
    return s;
  });
  std::vector<double> hess, grad;
  for (const auto& s : samples) hess.push_back(s.hessian), grad.push_back(s.gradient);
  CheckRecord rec = summarize(cx.suite, "hessian-equation",
                              "max |Hess_H rho - phi g| with " + std::to_string(kDirectionsPerPoint) +
                                  " directions per point (phi = -K rho + B)",
                              hess, cx.tol.at("hessian-equation"));
  cx.report.checks.push_back(rec);
  if (spec.is_warped()) {
    cx.add("gradient-rho", "|g^ij rho_j - rho'(t) e_1|", grad);
  } else {
    cx.skip("gradient-rho", "closed form (rho'(t), 0, ..., 0) needs a warped metric");
  }
}

// ---------------------------------------------------------------- decomposition

void decomposition_suite(Context& cx) {
  const auto& spec = cx.spec;
  const char* const tags[] = {"decomposition-block1",    "decomposition-block2", "decomposition-block3",
                              "decomposition-frequency", "decomposition-warp",   "decomposition-substituted"};
  if (!spec.is_warped()) {
    for (const char* t : tags) cx.skip(t, "needs a warped metric in adapted coordinates");
    return;
  }
  const auto sol = metrics::default_solution(spec);
  const auto samples = cx.map(cx.config.samples, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    return geometry::check_decomposition(spec, sample_element(spec, rng), sol);
  });
  std::vector<double> v[6];
  for (const auto& r : samples) {
    v[0].push_back(r.block1), v[1].push_back(r.block2), v[2].push_back(r.block3);
    v[3].push_back(r.frequency), v[4].push_back(r.warp), v[5].push_back(r.substituted);
  }
  cx.add(tags[0], "radial-fiber block: Q^a_1c1 = -Q^a_c11 = (rho'''/rho') delta", v[0]);
  cx.add(tags[1], "radial block: Q^1_1cb = -Q^1_c1b = -rho' rho''' f_cb", v[1]);
  cx.add(tags[2], "fiber block: Q^a_dcb = Qbar^a_dcb - rho''^2 (f delta - f delta)", v[2]);
  cx.add(tags[3], "| -rho'''/rho' - C^2 |", v[3]);
  cx.add(tags[4], "| g_cb - rho'^2 f_cb |", v[4]);
  cx.add(tags[5], "fiber block after substitution: | Q^a_dcb - C^2 (g delta - g delta) |", v[5]);
}

// ---------------------------------------------------------------- constant form

void constant_form_suite(Context& cx) {
  const auto& spec = cx.spec;
  const auto K = spec.expected_curvature;
  struct Sample {
    double form, wrong, anti;
  };
  const auto samples = cx.map(cx.config.samples, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    const auto c = geometry::curvature(spec, sample_element(spec, rng));
    Sample s{};
    if (K) {
      s.form = geometry::constant_form_residual(c, *K);
      s.wrong = geometry::constant_form_residual(c, *K + 1.0);
    }
    s.anti = geometry::antisymmetry_residual(c.h_curvature);
    return s;
  });
  std::vector<double> form, wrong, anti;
  for (const auto& s : samples) form.push_back(s.form), wrong.push_back(s.wrong), anti.push_back(s.anti);
  if (K) {
    cx.add("constant-form", "max |Q^i_hjk - K (delta^i_h g_jk - delta^i_j g_hk)| at the declared K", form);
    cx.add("constant-form-sensitivity", "same residual at K + 1 (must be detected)", wrong, Comparison::at_least);
  } else {
    cx.skip("constant-form", "metric declares no expected_curvature");
    cx.skip("constant-form-sensitivity", "metric declares no expected_curvature");
  }
  cx.add("curvature-antisymmetry", "max |Q^i_hjk + Q^i_jhk|", anti);
}

// ---------------------------------------------------------------- ode

void ode_suite(Context& cx) {
  const auto& spec = cx.spec;
  const auto sol = metrics::default_solution(spec);
  const int count = std::min(cx.config.samples, kMaxOdeGeodesics);
  struct Sample {
    double residual = 0.0, spacing = std::nan(""), speed = 0.0;
  };
  const bool warped = spec.is_warped();
  const double C = warped ? spec.warped().C : 0.0;
  const auto samples = cx.map(count, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    geodesics::GeodesicTrace trace;
    if (warped) {
      // Radial geodesic: t from the pole offset to the antipodal offset.
      Vector x = detail::sample_point(spec, rng);
      const double off = pole_offset(C);
      x[0] = off;
      Vector y(dim(spec), 0.0);
      y[0] = 1.0;
      trace = geodesics::integrate_geodesic(spec, {x, y}, pi / C - 2.0 * off, cx.config.step);
    } else {
      const auto start = geodesics::unit_line_element(spec, sample_element(spec, rng));
      trace = geodesics::integrate_geodesic(spec, start, 1.0, cx.config.step);
    }
    if (trace.samples.size() < 5) throw DomainError("geodesic left the chart immediately");
    const auto series = geodesics::rho_along_geodesic(trace, sol);
    Sample s;
    s.residual = series.max_residual;
    if (series.fitted_frequency) s.spacing = std::abs(pi / *series.fitted_frequency - pi / C);
    for (const auto& p : trace.samples) {
      s.speed = std::max(s.speed, std::abs(metrics::finsler_function(spec, {p.x, p.y}) - 1.0));
    }
    return s;
  });
  std::vector<double> res, spacing, speed;
  for (const auto& s : samples) res.push_back(s.residual), spacing.push_back(s.spacing), speed.push_back(s.speed);
  if (has_solution(spec)) {
    cx.add("ode-residual",
           warped ? "max |rho'' + K rho - B| along radial geodesics (five-point second differences)"
                  : "max |rho'' + K rho - B| along random unit geodesics (five-point second differences)",
           res);
  } else {
    cx.skip("ode-residual", kNoSolution);
  }
  if (warped && sol.K() > 0.0) {
    cx.add("critical-point-spacing", "| pi / fitted frequency - pi / C |", spacing);
    const auto cp = metrics::critical_points(sol);
    double err = cp.size() == 2 ? std::max(std::abs(cp[0]), std::abs(cp[1] - pi / C)) : 1.0;
    cx.add("critical-points", "closed-form zeros of rho' vs {0, pi / C}", {err});
  } else {
    cx.skip("critical-point-spacing", "needs a warped metric with K > 0");
    cx.skip("critical-points", "needs a warped metric with K > 0");
  }
  cx.add("unit-speed", "max |F(x, x') - 1| along the traces", speed);
}

// ---------------------------------------------------------------- torsion

void torsion_suite(Context& cx) {
  const auto& spec = cx.spec;
  const int count = std::min(cx.config.samples, kMaxTorsionGeodesics);
  const double K = spec.expected_curvature.value_or(0.0);
  const auto n = dim(spec);
  struct Sample {
    double A = 0.0, residual = 0.0, transport = 0.0;
  };
  const auto samples = cx.map(count, [&](int i) {
    auto rng = cx.rng(static_cast<std::uint64_t>(i));
    const auto start = geodesics::unit_line_element(spec, sample_element(spec, rng));
    std::vector<Vector> frame;
    for (int k = 0; k < 3; ++k) frame.push_back(detail::sample_direction(n, rng));
    const auto trace = geodesics::integrate_geodesic(spec, start, 1.0, cx.config.step, frame);
    if (trace.samples.size() < 5) throw DomainError("geodesic left the chart immediately");
    const auto series = geodesics::cartan_torsion_along_geodesic(spec, trace, K);
    Sample s;
    s.A = series.max_abs;
    s.residual = series.max_residual;
    const auto& s0 = trace.samples.front();
    const auto g0 = geometry::fundamental_tensor(spec, {s0.x, s0.y});
    const auto& s1 = trace.samples.back();
    const auto g1 = geometry::fundamental_tensor(spec, {s1.x, s1.y});
    // Drift relative to the initial lengths, so the check does not scale with |V|.
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = a; b < 3; ++b) {
        const double scale = std::sqrt(geometry::bilinear(g0, s0.frame[a], s0.frame[a]) *
                                       geometry::bilinear(g0, s0.frame[b], s0.frame[b]));
        s.transport = std::max(s.transport, std::abs(geometry::bilinear(g1, s1.frame[a], s1.frame[b]) -
                                                     geometry::bilinear(g0, s0.frame[a], s0.frame[b])) /
                                                scale);
      }
    return s;
  });
  std::vector<double> A, res, transport;
  for (const auto& s : samples) A.push_back(s.A), res.push_back(s.residual), transport.push_back(s.transport);
  const auto cmp = spec.is_riemannian() ? Comparison::at_most : Comparison::record;
  cx.add("torsion-vanishing", "max |A(X(t), Y(t), Z(t))| with A = F C along unit geodesics", A, cmp);
  cx.add("torsion-ode", "max |A'' + K A| along the same traces (K = declared curvature or 0)", res, cmp);

  // Self-test of the residual machinery on an exact solution A = 0.3 cos(sqrt(K') t).
  const double Ks = K > 0.0 ? K : 1.0;
  std::vector<double> synth;
  const auto steps = static_cast<int>(std::ceil(2.0 * pi / std::sqrt(Ks) / cx.config.step));
  for (int i = 0; i <= steps; ++i) synth.push_back(0.3 * std::cos(std::sqrt(Ks) * i * cx.config.step));
  const auto r = geodesics::ode_residual(synth, cx.config.step, Ks);
  cx.add("torsion-synthetic", "residual check on the injected series 0.3 cos(sqrt(K) t)",
         {*std::max_element(r.begin(), r.end())});
  cx.add("parallel-transport", "relative drift of g(V_a, V_b) between trace ends", transport);
}

// ---------------------------------------------------------------- focusing

void focusing_suite(Context& cx) {
  const auto& spec = cx.spec;
  if (spec.is_warped()) {
    const double C = spec.warped().C;
    const auto r = geodesics::antipodal_focusing(spec, pole_offset(C), kFocusingCount, cx.config.step);
    CheckRecord spread = summarize(cx.suite, "focusing-arrival-spread",
                                   "max - min arrival t of radial geodesics from the t = offset level",
                                   {r.arrival_spread}, cx.tol.at("focusing-arrival-spread"));
    spread.samples = r.count;
    cx.report.checks.push_back(spread);
    std::vector<double> err;
    for (double a : r.arrival) err.push_back(std::abs(a - (pi / C - r.pole_offset)));
    cx.add("focusing-arrival-error", "|arrival t - (pi / C - offset)|", err);
    CheckRecord len = summarize(cx.suite, "focusing-length", "| mean arrival + offset - pi / C | (diameter)",
                                {std::abs(r.focal_length - pi / C)}, cx.tol.at("focusing-length"));
    len.samples = r.count;
    cx.report.checks.push_back(len);
    cx.skip("ray-spread-linearity", "flat negative control only");
    return;
  }
  cx.skip("focusing-arrival-spread", "needs a warped metric");
  cx.skip("focusing-arrival-error", "needs a warped metric");
  cx.skip("focusing-length", "needs a warped metric");
  if (!spec.expected_curvature || *spec.expected_curvature != 0.0) {
    cx.skip("ray-spread-linearity", "flat negative control only (expected_curvature 0)");
    return;
  }
  auto rng = cx.rng(0);
  const Vector origin = detail::sample_point(spec, rng);
  std::vector<Vector> dirs;
  for (int k = 0; k < kFocusingCount; ++k) dirs.push_back(detail::sample_direction(dim(spec), rng));
  // Stay inside bounded charts.
  double reach = 1.0;
  const auto& chart = spec.chart();
  for (std::size_t k = 0; k < std::min(chart.lower.size(), chart.upper.size()); ++k) {
    reach = std::min(reach, 0.3 * std::min(origin[k] - chart.lower[k], chart.upper[k] - origin[k]));
  }
  const std::vector<double> lengths{0.25 * reach, 0.5 * reach, reach};
  const auto spread = geodesics::ray_spread(spec, origin, dirs, lengths, cx.config.step);
  std::vector<double> dev;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    dev.push_back(std::abs(spread[i] / lengths[i] - spread[0] / lengths[0]) / (spread[0] / lengths[0]));
  }
  cx.add("ray-spread-linearity", "relative deviation of endpoint spread / length from a constant (no focusing)", dev);
}

}  // namespace

std::string tool_version() { return std::string("finsler ") + FINSLER_VERSION; }

VerificationReport run_suite(const MetricSpec& spec, const ExperimentConfig& config, const std::string& fingerprint,
                             const std::string& path) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  VerificationReport report;
  report.suite = std::string(suite_name(config.suite));
  report.metric_path = path;
  report.fingerprint = fingerprint;
  report.samples = config.samples;
  report.seed = config.seed;
  report.step = config.step;
  report.tool_version = tool_version();
  const auto tol = resolve_tolerances(config.tolerances);

  std::vector<Suite> suites{config.suite};
  if (config.suite == Suite::all) suites = concrete_suites();
  for (Suite s : suites) {
    Context cx{spec, config, tol, report, std::string(suite_name(s))};
    switch (s) {
      case Suite::flag_curvature:
        flag_curvature_suite(cx);
        break;
      case Suite::hessian:
        hessian_suite(cx);
        break;
      case Suite::decomposition:
        decomposition_suite(cx);
        break;
      case Suite::constant_form:
        constant_form_suite(cx);
        break;
      case Suite::ode:
        ode_suite(cx);
        break;
      case Suite::torsion:
        torsion_suite(cx);
        break;
      case Suite::focusing:
        focusing_suite(cx);
        break;
      case Suite::all:
        break;
    }
  }
  if (config.timing) {
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }
  return report;
}

VerificationReport run_suite(const ExperimentConfig& config) {
  config.validate();
  const std::string text = metrics::read_file(config.metric);
  const auto spec = metrics::parse_metric(text);
  auto report = run_suite(spec, config, metrics::fingerprint(text), config.metric.generic_string());
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_object() && j.contains("name") && j["name"].is_string()) report.metric_name = j["name"].get<std::string>();
  return report;
}

}  // namespace finsler::verify
