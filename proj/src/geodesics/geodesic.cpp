#include "finsler/geodesics/geodesic.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "finsler/error.hpp"
#include "finsler/geometry/connection.hpp"
#include "finsler/metrics/evaluate.hpp"

namespace finsler::geodesics {

namespace {

// x, y, then the frame vectors, flattened.
using State = std::vector<double>;

struct LeftChart {
  std::string reason;
};

State derivative(const MetricSpec& spec, const State& s, std::size_t n) {
  std::span<const double> x(s.data(), n), y(s.data() + n, n);
  if (!metrics::in_chart(spec, x)) throw LeftChart{"left the chart domain or entered a pole band"};
  geometry::SprayData d;
  try {
    d = geometry::spray_and_connection(spec, x, y);
  } catch (const DomainError& e) {
    throw LeftChart{e.what()};
  }
  State out(s.size());
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = y[i];
    out[n + i] = -2.0 * d.spray[i];
  }
  const std::size_t vectors = s.size() / n - 2;
  for (std::size_t k = 0; k < vectors; ++k) {
    const double* v = s.data() + (2 + k) * n;
    double* dv = out.data() + (2 + k) * n;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc -= d.nconn(static_cast<int>(i), static_cast<int>(j)) * v[j];
      dv[i] = acc;
    }
  }
  return out;
}

State axpy(const State& s, double h, const State& k) {
  State out(s);
  for (std::size_t i = 0; i < s.size(); ++i) out[i] += h * k[i];
  return out;
}

TraceSample sample_of(const State& s, double t, std::size_t n) {
  TraceSample out;
  out.t = t;
  out.x.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
  out.y.assign(s.begin() + static_cast<std::ptrdiff_t>(n), s.begin() + static_cast<std::ptrdiff_t>(2 * n));
  for (std::size_t k = 2; k < s.size() / n; ++k) {
    out.frame.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(k * n),
                           s.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
  }
  return out;
}

void put(std::ostream& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

LineElement unit_line_element(const MetricSpec& spec, LineElement el) {
  const double F = metrics::finsler_function(spec, el);
  for (double& v : el.y) v /= F;
  return el;
}

GeodesicTrace integrate_geodesic(const MetricSpec& spec, const LineElement& start, double length, double step,
                                 const std::vector<Vector>& frame) {
  if (!(length > 0.0) || !(step > 0.0)) throw InvalidArgument("geodesic length and step must be positive");
  const double F = metrics::finsler_function(spec, start);
  if (std::abs(F - 1.0) > 1e-8) throw InvalidArgument("geodesic start must have F(x, y) = 1");
  const auto n = static_cast<std::size_t>(spec.dimension());
  for (const auto& v : frame) {
    if (v.size() != n) throw InvalidArgument("frame vector has the wrong dimension");
  }

  const auto steps = static_cast<long>(std::ceil(length / step - 1e-9));
  const double h = length / static_cast<double>(steps);

  GeodesicTrace trace;
  trace.metric = std::make_shared<const MetricSpec>(spec);
  trace.step = h;
  trace.samples.reserve(static_cast<std::size_t>(steps) + 1);

  State s(start.x);
  s.insert(s.end(), start.y.begin(), start.y.end());
  for (const auto& v : frame) s.insert(s.end(), v.begin(), v.end());
  trace.samples.push_back(sample_of(s, 0.0, n));

  try {
    for (long i = 1; i <= steps; ++i) {
      const State k1 = derivative(spec, s, n);
      const State k2 = derivative(spec, axpy(s, 0.5 * h, k1), n);
      const State k3 = derivative(spec, axpy(s, 0.5 * h, k2), n);
      const State k4 = derivative(spec, axpy(s, h, k3), n);
      State next(s);
      for (std::size_t j = 0; j < s.size(); ++j) next[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!metrics::in_chart(spec, std::span<const double>(next.data(), n))) {
        throw LeftChart{"left the chart domain or entered a pole band"};
      }
      s = std::move(next);
      trace.samples.push_back(sample_of(s, static_cast<double>(i) * h, n));
    }
  } catch (const LeftChart& e) {
    trace.truncated = true;
    trace.truncation_reason = e.reason;
  }
  return trace;
}

void write_trace_csv(const GeodesicTrace& trace, std::ostream& out) {
  const std::size_t n = trace.samples.empty() ? 0 : trace.samples.front().x.size();
  const std::size_t vectors = trace.samples.empty() ? 0 : trace.samples.front().frame.size();
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",y" << i;
  for (std::size_t k = 1; k <= vectors; ++k)
    for (std::size_t i = 1; i <= n; ++i) out << ",v" << k << '_' << i;
  out << '\n';
  for (const auto& s : trace.samples) {
    put(out, s.t);
    for (double v : s.x) out << ',', put(out, v);
    for (double v : s.y) out << ',', put(out, v);
    for (const auto& f : s.frame)
      for (double v : f) out << ',', put(out, v);
    out << '\n';
  }
}

void write_trace_csv(const GeodesicTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_trace_csv(trace, out);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace finsler::geodesics
