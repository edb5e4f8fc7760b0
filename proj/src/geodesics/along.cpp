#include "finsler/geodesics/along.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsler/error.hpp"
#include "finsler/geometry/connection.hpp"

namespace finsler::geodesics {

using std::numbers::pi;

std::vector<double> second_differences(std::span<const double> f, double h) {
  if (f.size() < 5) throw InvalidArgument("second differences need at least 5 samples");
  if (!(h > 0.0)) throw InvalidArgument("grid step must be positive");
  std::vector<double> out(f.size() - 4);
  const double scale = 1.0 / (12.0 * h * h);
  for (std::size_t i = 2; i + 2 < f.size(); ++i) {
    out[i - 2] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) * scale;
  }
  return out;
}

std::vector<double> ode_residual(std::span<const double> f, double h, double K) {
  auto d2 = second_differences(f, h);
  for (std::size_t i = 0; i < d2.size(); ++i) d2[i] = std::abs(d2[i] + K * f[i + 2]);
  return d2;
}

SinusoidFit fit_sinusoid(std::span<const double> t, std::span<const double> f, double w) {
  if (t.size() != f.size() || t.size() < 2) throw InvalidArgument("sinusoid fit needs matching series of length >= 2");
  double cc = 0, cs = 0, ss = 0, fc = 0, fs = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double c = std::cos(w * t[i]), s = std::sin(w * t[i]);
    cc += c * c, cs += c * s, ss += s * s, fc += f[i] * c, fs += f[i] * s;
  }
  const double det = cc * ss - cs * cs;
  if (!(std::abs(det) > 1e-300)) throw InvalidArgument("sinusoid fit is singular for this grid");
  SinusoidFit fit;
  fit.a = (fc * ss - fs * cs) / det;
  fit.b = (fs * cc - fc * cs) / det;
  for (std::size_t i = 0; i < t.size(); ++i) {
    fit.max_error = std::max(fit.max_error, std::abs(f[i] - fit.a * std::cos(w * t[i]) - fit.b * std::sin(w * t[i])));
  }
  return fit;
}

RhoSeries rho_along_geodesic(const GeodesicTrace& trace, const metrics::SpecialSolution& sol) {
  if (trace.samples.size() < 5) throw InvalidArgument("trace too short for second differences");
  RhoSeries out;
  for (const auto& s : trace.samples) {
    out.t.push_back(s.t);
    out.rho.push_back(sol(s.x[0]));
  }
  const double K = sol.K(), B = sol.B();
  const auto d2 = second_differences(out.rho, trace.step);
  out.residual.resize(d2.size());
  for (std::size_t i = 0; i < d2.size(); ++i) {
    out.residual[i] = std::abs(d2[i] + K * out.rho[i + 2] - B);
    out.max_residual = std::max(out.max_residual, out.residual[i]);
  }
  if (K > 0.0) {
    const double c = B / K;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d2.size(); ++i) {
      const double r = out.rho[i + 2] - c;
      num -= d2[i] * r;
      den += r * r;
    }
    if (den > 0.0 && num > 0.0) out.fitted_frequency = std::sqrt(num / den);
    for (std::size_t i = 1; i < out.rho.size(); ++i) {
      const double a = out.rho[i - 1] - c, b = out.rho[i] - c;
      if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
        out.zero_crossings.push_back(out.t[i - 1] + (out.t[i] - out.t[i - 1]) * a / (a - b));
      }
    }
    if (out.zero_crossings.size() >= 2) {
      const double spacing = (out.zero_crossings.back() - out.zero_crossings.front()) /
                             static_cast<double>(out.zero_crossings.size() - 1);
      out.crossing_frequency = pi / spacing;
    }
  }
  return out;
}

TorsionSeries cartan_torsion_along_geodesic(const MetricSpec& spec, const GeodesicTrace& trace, double K,
                                            std::array<int, 3> which) {
  if (trace.samples.size() < 5) throw InvalidArgument("trace too short for second differences");
  const auto vectors = static_cast<int>(trace.samples.front().frame.size());
  for (int w : which) {
    if (w < 0 || w >= vectors) throw InvalidArgument("trace does not carry the requested frame vector");
  }
  TorsionSeries out;
  const int n = spec.dimension();
  for (const auto& s : trace.samples) {
    const auto c = geometry::cartan_tensor(spec, {s.x, s.y});
    const auto& X = s.frame[static_cast<std::size_t>(which[0])];
    const auto& Y = s.frame[static_cast<std::size_t>(which[1])];
    const auto& Z = s.frame[static_cast<std::size_t>(which[2])];
    double a = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          a += c(i, j, k) * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)] * Z[static_cast<std::size_t>(k)];
        }
    out.t.push_back(s.t);
    out.A.push_back(a);
  }
  // A = F C with F = 1 along a unit-speed trace; rescale in case of drift.
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    const auto& s = trace.samples[i];
    const auto g = geometry::fundamental_tensor(spec, {s.x, s.y});
    out.A[i] *= std::sqrt(geometry::bilinear(g, s.y, s.y));
    out.max_abs = std::max(out.max_abs, std::abs(out.A[i]));
  }
  out.residual = ode_residual(out.A, trace.step, K);
  for (double r : out.residual) out.max_residual = std::max(out.max_residual, r);
  return out;
}

TorsionSeries cartan_torsion_along_geodesic(const MetricSpec& spec, const LineElement& start, double length,
                                            double step, const Vector& X, const Vector& Y, const Vector& Z,
                                            double K) {
  const auto trace = integrate_geodesic(spec, start, length, step, {X, Y, Z});
  if (trace.truncated) throw DomainError("geodesic left the chart: " + trace.truncation_reason);
  return cartan_torsion_along_geodesic(spec, trace, K);
}

namespace {

/// Deterministic, pairwise distinct points of a fiber chart.
Vector fiber_point(const MetricSpec& spec, int k, int count) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  const double theta = 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
  Vector u(n, 0.0);
  if (spec.is_warped()) {
    const double C = spec.warped().C;
    u[0] = (0.5 * pi + 0.8 * std::cos(theta)) / C;
    if (n > 1) {
      const Vector rest = fiber_point(*spec.warped().fiber, k, count);
      std::copy(rest.begin(), rest.end(), u.begin() + 1);
    }
    return u;
  }
  const auto& chart = spec.chart();
  for (std::size_t j = 0; j < n; ++j) {
    double mid = 0.0, half = 1.0;
    if (j < chart.lower.size() && j < chart.upper.size()) {
      mid = 0.5 * (chart.lower[j] + chart.upper[j]);
      half = std::min(1.0, 0.5 * (chart.upper[j] - chart.lower[j]));
    }
    u[j] = mid + 0.5 * half * std::sin(theta + 0.5 + static_cast<double>(j));
  }
  return u;
}

double max_pairwise(const std::vector<Vector>& pts) {
  double worst = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) d += (pts[a][i] - pts[b][i]) * (pts[a][i] - pts[b][i]);
      worst = std::max(worst, std::sqrt(d));
    }
  return worst;
}

}  // namespace

FocusingReport antipodal_focusing(const MetricSpec& spec, double pole_offset, int count, double step) {
  const auto& w = spec.warped();
  if (count < 2) throw InvalidArgument("focusing needs at least two geodesics");
  if (w.C * pole_offset < metrics::kPoleMargin - 1e-12) {
    throw InvalidArgument("pole_offset must satisfy C * pole_offset >= the pole margin");
  }
  FocusingReport r;
  r.C = w.C;
  r.pole_offset = pole_offset;
  r.count = count;
  r.length = pi / w.C - 2.0 * pole_offset;
  if (!(r.length > 0.0)) throw InvalidArgument("pole_offset leaves no room between the poles");
  const auto n = static_cast<std::size_t>(spec.dimension());
  std::vector<Vector> starts, ends;
  for (int k = 0; k < count; ++k) {
    Vector x(n, 0.0);
    x[0] = pole_offset;
    if (n > 1) {
      const Vector u = fiber_point(*w.fiber, k, count);
      std::copy(u.begin(), u.end(), x.begin() + 1);
    }
    Vector y(n, 0.0);
    y[0] = 1.0;
    const auto trace = integrate_geodesic(spec, {x, y}, r.length, step);
    if (trace.truncated) throw DomainError("radial geodesic left the chart: " + trace.truncation_reason);
    starts.push_back(x);
    ends.push_back(trace.samples.back().x);
    r.arrival.push_back(ends.back()[0]);
  }
  const auto [lo, hi] = std::minmax_element(r.arrival.begin(), r.arrival.end());
  r.arrival_spread = *hi - *lo;
  double mean = 0.0;
  for (double a : r.arrival) {
    r.arrival_error = std::max(r.arrival_error, std::abs(a - (pi / w.C - pole_offset)));
    mean += a;
  }
  mean /= static_cast<double>(count);
  r.focal_length = mean + pole_offset;
  r.start_spread = max_pairwise(starts);
  r.end_spread = max_pairwise(ends);
  return r;
}

std::vector<double> ray_spread(const MetricSpec& spec, const Vector& origin, const std::vector<Vector>& directions,
                               const std::vector<double>& lengths, double step) {
  if (directions.size() < 2) throw InvalidArgument("ray spread needs at least two directions");
  std::vector<double> out;
  for (double L : lengths) {
    std::vector<Vector> ends;
    for (const auto& d : directions) {
      const auto start = unit_line_element(spec, {origin, d});
      const auto trace = integrate_geodesic(spec, start, L, step);
      if (trace.truncated) throw DomainError("ray left the chart: " + trace.truncation_reason);
      ends.push_back(trace.samples.back().x);
    }
    out.push_back(max_pairwise(ends));
  }
  return out;
}

}  // namespace finsler::geodesics
