#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "finsler/error.hpp"
#include "finsler/geodesics/along.hpp"
#include "finsler/geometry/connection.hpp"
#include "finsler/metrics/evaluate.hpp"
#include "finsler/metrics/metric_io.hpp"

using namespace finsler;
using namespace finsler::geodesics;
using std::numbers::pi;

namespace {

std::string fixture(const std::string& name) { return std::string(FINSLER_FIXTURE_DIR) + "/" + name; }

using V3 = std::array<double, 3>;

// Round sphere of radius 1/C in its warped chart, embedded in R^3.
V3 embed(double C, const Vector& x) {
  return {std::sin(C * x[0]) * std::cos(x[1]) / C, std::sin(C * x[0]) * std::sin(x[1]) / C, std::cos(C * x[0]) / C};
}

V3 embed_velocity(double C, const Vector& x, const Vector& y) {
  const double s = std::sin(C * x[0]), c = std::cos(C * x[0]);
  return {c * std::cos(x[1]) * y[0] - s * std::sin(x[1]) * y[1] / C,
          c * std::sin(x[1]) * y[0] + s * std::cos(x[1]) * y[1] / C, -s * y[0]};
}

// Unit-speed great circle on the sphere of radius 1/C: p cos(C s) + (v / C) sin(C s).
V3 great_circle(double C, const V3& p, const V3& v, double s) {
  return {p[0] * std::cos(C * s) + v[0] / C * std::sin(C * s), p[1] * std::cos(C * s) + v[1] / C * std::sin(C * s),
          p[2] * std::cos(C * s) + v[2] / C * std::sin(C * s)};
}

double dist(const V3& a, const V3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

double endpoint_error(const MetricSpec& spec, double C, const LineElement& start, double length, double step) {
  const auto trace = integrate_geodesic(spec, start, length, step);
  REQUIRE_FALSE(trace.truncated);
  const auto p = embed(C, start.x), v = embed_velocity(C, start.x, start.y);
  return dist(embed(C, trace.samples.back().x), great_circle(C, p, v, length));
}

}  // namespace

TEST_CASE("straight lines in the flat metric") {
  const auto flat = metrics::euclidean(2);
  const auto trace = integrate_geodesic(flat, {{0.0, 0.0}, {1.0, 0.0}}, 1.0, 1e-2);
  CHECK_FALSE(trace.truncated);
  CHECK(trace.samples.size() == 101);
  CHECK(std::abs(trace.samples.back().x[0] - 1.0) < 1e-12);
  CHECK(std::abs(trace.samples.back().x[1]) < 1e-12);
  CHECK(trace.samples.back().t == doctest::Approx(1.0));
  CHECK_THROWS_AS(integrate_geodesic(flat, {{0.0, 0.0}, {2.0, 0.0}}, 1.0, 1e-2), InvalidArgument);
  CHECK_THROWS_AS(integrate_geodesic(flat, {{0.0, 0.0}, {1.0, 0.0}}, -1.0, 1e-2), InvalidArgument);
}

TEST_CASE("great circles on the round sphere") {
  for (double C : {1.0, 2.0}) {
    const auto sphere = metrics::round_sphere(2, C);
    const auto start = unit_line_element(sphere, {{pi / (2 * C), -3.0}, {0.4, 1.0}});
    CHECK(endpoint_error(sphere, C, start, 2 * pi / C, 1e-3) < 1e-5);
    const auto trace = integrate_geodesic(sphere, start, 2 * pi / C, 1e-3);
    CHECK(dist(embed(C, trace.samples.back().x), embed(C, start.x)) < 1e-5);
  }
}

TEST_CASE("fourth-order convergence under step halving") {
  const auto sphere = metrics::round_sphere(2, 1.0);
  const auto start = unit_line_element(sphere, {{pi / 2, 0.0}, {0.7, 1.0}});
  const double coarse = endpoint_error(sphere, 1.0, start, pi, 1e-2);
  const double fine = endpoint_error(sphere, 1.0, start, pi, 5e-3);
  const double ratio = coarse / fine;
  INFO("ratio " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("unit speed and parallel transport are preserved") {
  for (const char* name : {"sphere_c1_n3.json", "randers_bump_n2.json", "bump_n2.json"}) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const int n = spec.dimension();
    Vector x(static_cast<std::size_t>(n), 0.0), y(static_cast<std::size_t>(n), 0.3);
    double length = 0.8;
    if (spec.is_warped()) {
      x = {pi / 2, pi / 2, 0.0};
      length = pi;
    }
    y[0] = 1.0;
    const auto start = unit_line_element(spec, {x, y});
    std::vector<Vector> frame;
    for (int k = 0; k < n; ++k) {
      Vector e(static_cast<std::size_t>(n), 0.1);
      e[static_cast<std::size_t>(k)] = 1.0;
      frame.push_back(e);
    }
    const auto trace = integrate_geodesic(spec, start, length, 1e-3, frame);
    REQUIRE_FALSE(trace.truncated);
    const auto g0 = geometry::fundamental_tensor(spec, {trace.samples[0].x, trace.samples[0].y});
    double speed = 0.0, inner = 0.0;
    for (const auto& s : trace.samples) {
      speed = std::max(speed, std::abs(metrics::finsler_function(spec, {s.x, s.y}) - 1.0));
      const auto g = geometry::fundamental_tensor(spec, {s.x, s.y});
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
          inner = std::max(inner, std::abs(geometry::bilinear(g, s.frame[ua], s.frame[ub]) -
                                           geometry::bilinear(g0, frame[ua], frame[ub])));
        }
    }
    CHECK(speed < 1e-6 * length);
    CHECK(inner < 1e-5);
  }
}

TEST_CASE("trace truncates at the chart boundary") {
  const auto spec = metrics::load_metric(fixture("bump_n2.json"));
  const auto start = unit_line_element(spec, {{0.0, 0.0}, {1.0, 0.0}});
  const auto trace = integrate_geodesic(spec, start, 5.0, 1e-2);
  CHECK(trace.truncated);
  CHECK_FALSE(trace.truncation_reason.empty());
  CHECK(trace.length() < 5.0);
  CHECK(std::abs(trace.samples.back().x[0]) <= 1.0);

  const auto sphere = metrics::round_sphere(2, 1.0);
  const auto radial = integrate_geodesic(sphere, {{1.0, 0.0}, {-1.0, 0.0}}, 2.0, 1e-2);
  CHECK(radial.truncated);
  CHECK(radial.samples.back().x[0] >= metrics::kPoleMargin - 1e-9);
}

TEST_CASE("special-solution ODE along geodesics") {
  for (double C : {0.5, 1.0, 2.0}) {
    const auto sphere = metrics::round_sphere(3, C);
    const auto sol = metrics::sphere_solution(C);
    const double offset = std::max(0.05, metrics::kPoleMargin / C);
    const auto radial = integrate_geodesic(sphere, {{offset, pi / (2 * C), 0.0}, {1.0, 0.0, 0.0}},
                                           pi / C - 2 * offset, 1e-3);
    REQUIRE_FALSE(radial.truncated);
    const auto series = rho_along_geodesic(radial, sol);
    CHECK(series.max_residual < 1e-6);
    REQUIRE(series.fitted_frequency);
    CHECK(std::abs(pi / *series.fitted_frequency - pi / C) < 1e-3);

    // A tilted great circle stays off the poles and crosses rho = 0 repeatedly.
    const auto start = unit_line_element(sphere, {{pi / (2 * C), pi / (2 * C), -9.0}, {0.5, 0.0, 1.0}});
    const auto tilted = integrate_geodesic(sphere, start, 2.2 * pi / C, 1e-3);
    REQUIRE_FALSE(tilted.truncated);
    const auto t2 = rho_along_geodesic(tilted, sol);
    CHECK(t2.max_residual < 1e-6);
    REQUIRE(t2.crossing_frequency);
    CHECK(std::abs(*t2.crossing_frequency - C) < 1e-3);
  }

  const auto flat = metrics::euclidean(2);
  const auto line = integrate_geodesic(flat, {{0.0, 0.0}, {0.6, 0.8}}, 2.0, 1e-2);
  const auto probe = rho_along_geodesic(line, metrics::default_solution(flat));
  CHECK(probe.max_residual < 1e-10);
  CHECK_FALSE(probe.fitted_frequency);

  const auto short_trace = integrate_geodesic(flat, {{0.0, 0.0}, {1.0, 0.0}}, 0.02, 1e-2);
  CHECK_THROWS_AS(rho_along_geodesic(short_trace, metrics::default_solution(flat)), InvalidArgument);
}

TEST_CASE("stencil and sinusoid helpers on synthetic series") {
  const double h = 1e-3;
  std::vector<double> t, A;
  for (int i = 0; i <= 4000; ++i) {
    t.push_back(i * h);
    A.push_back(0.3 * std::cos(i * h));
  }
  double worst = 0.0;
  for (double r : ode_residual(A, h, 1.0)) worst = std::max(worst, r);
  CHECK(worst < 1e-8);
  const auto fit = fit_sinusoid(t, A, 1.0);
  CHECK(fit.a == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(std::abs(fit.b) < 1e-12);
  CHECK(fit.max_error < 1e-12);

  // A wrong frequency is visible.
  worst = 0.0;
  for (double r : ode_residual(A, h, 1.2)) worst = std::max(worst, r);
  CHECK(worst > 0.01);

  const std::vector<double> cubic{0.0, 1.0, 8.0, 27.0, 64.0, 125.0};
  const auto d2 = second_differences(cubic, 1.0);
  REQUIRE(d2.size() == 2);
  CHECK(d2[0] == doctest::Approx(12.0));
  CHECK(d2[1] == doctest::Approx(18.0));
  CHECK_THROWS_AS(second_differences(std::vector<double>{1, 2, 3, 4}, 1.0), InvalidArgument);
}

TEST_CASE("Cartan torsion along geodesics") {
  for (const char* name : {"sphere_c1_n3.json", "bump_n2.json", "linear_n3.json", "stereographic_n2.json"}) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const int n = spec.dimension();
    Vector x(static_cast<std::size_t>(n), 0.1), y(static_cast<std::size_t>(n), 0.4);
    if (spec.is_warped()) x = {pi / 2, pi / 2, 0.0};
    y[0] = 1.0;
    const auto start = unit_line_element(spec, {x, y});
    Vector X(static_cast<std::size_t>(n), 0.0), Y = X, Z = X;
    X[0] = 1.0, Y[1] = 1.0, Z[static_cast<std::size_t>(n - 1)] = 0.5, Z[0] = 0.5;
    const auto series = cartan_torsion_along_geodesic(spec, start, 0.5, 1e-3, X, Y, Z, 1.0);
    CHECK(series.max_abs < 1e-10);
    CHECK(series.max_residual < 1e-10);
  }
  const auto randers = metrics::load_metric(fixture("randers_bump_n2.json"));
  const auto start = unit_line_element(randers, {{0.0, 0.0}, {1.0, 0.3}});
  const auto series = cartan_torsion_along_geodesic(randers, start, 0.5, 1e-3, {1.0, 0.0}, {0.0, 1.0}, {0.0, 1.0}, 0.0);
  CHECK(series.max_abs > 1e-3);
}

TEST_CASE("antipodal focusing on the round sphere") {
  const auto s1 = metrics::round_sphere(2, 1.0);
  const auto r = antipodal_focusing(s1, 0.05, 8, 1e-3);
  CHECK(r.arrival.size() == 8);
  CHECK(r.arrival_spread < 1e-4);
  CHECK(r.arrival_error < 1e-4);
  CHECK(std::abs(r.focal_length - pi) < 1e-3);
  CHECK(r.length == doctest::Approx(pi - 0.1));

  const auto s2 = metrics::round_sphere(3, 2.0);
  const auto r2 = antipodal_focusing(s2, 0.05, 8, 1e-3);
  CHECK(std::abs(r2.focal_length - pi / 2) < 1e-3);
  CHECK(r2.arrival_error < 1e-4);

  CHECK_THROWS_AS(antipodal_focusing(metrics::round_sphere(2, 0.5), 0.05, 8, 1e-3), InvalidArgument);
  CHECK_NOTHROW(antipodal_focusing(metrics::round_sphere(2, 0.5), 0.1, 8, 1e-2));
  CHECK_THROWS_AS(antipodal_focusing(metrics::euclidean(2), 0.05, 8, 1e-3), InvalidArgument);
}

TEST_CASE("flat rays spread linearly") {
  const auto flat = metrics::euclidean(2);
  std::vector<Vector> dirs;
  for (int k = 0; k < 8; ++k) dirs.push_back({std::cos(0.3 * k), std::sin(0.3 * k)});
  const std::vector<double> lengths{0.5, 1.0, 2.0, 4.0};
  const auto spread = ray_spread(flat, {0.0, 0.0}, dirs, lengths, 1e-2);
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    CHECK(spread[i] / lengths[i] == doctest::Approx(spread[0] / lengths[0]).epsilon(1e-10));
  }
  CHECK(spread.back() > 4.0 * spread.front());
}

TEST_CASE("trace CSV export") {
  const auto sphere = metrics::round_sphere(2, 1.0);
  const auto trace = integrate_geodesic(sphere, {{1.0, 0.0}, {1.0, 0.0}}, 0.05, 1e-2, {{0.0, 1.0}});
  std::ostringstream out;
  write_trace_csv(trace, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,x1,x2,y1,y2,v1_1,v1_2");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
  }
  CHECK(rows == 6);
  CHECK(out.str().find("\n0,1,0,1,0,0,1\n") != std::string::npos);
  CHECK_THROWS_AS(write_trace_csv(trace, std::filesystem::path("/nonexistent/dir/trace.csv")), IoError);
}
