#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "finsler/error.hpp"
#include "finsler/geometry/curvature.hpp"
#include "finsler/geometry/hessian.hpp"
#include "finsler/jets/jet.hpp"
#include "finsler/metrics/evaluate.hpp"
#include "finsler/metrics/metric_io.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace finsler;
using namespace finsler::geometry;
using metrics::LineElement;
using std::numbers::pi;

namespace {

std::string fixture(const std::string& name) { return std::string(FINSLER_FIXTURE_DIR) + "/" + name; }

const char* const kAllFixtures[] = {"flat2.json",          "flat3.json",          "sphere_c05_n2.json",
                                    "sphere_c1_n2.json",   "sphere_c2_n2.json",   "sphere_c05_n3.json",
                                    "sphere_c1_n3.json",   "sphere_c2_n3.json",   "stereographic_n2.json",
                                    "bump_n2.json",        "linear_n3.json",      "randers_bump_n2.json"};

const char* const kRiemannian[] = {"sphere_c1_n2.json", "sphere_c2_n3.json", "sphere_c05_n3.json",
                                   "stereographic_n2.json", "bump_n2.json", "linear_n3.json"};

/// Random chart point well inside the chart (and off the warped pole bands).
Vector sample_point(const MetricSpec& spec, testing::Sampler& s) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  Vector x(n);
  if (spec.is_warped()) {
    const double C = spec.warped().C;
    x[0] = s.uniform(0.15, pi - 0.15) / C;
    if (n > 1) {
      const auto& fiber = *spec.warped().fiber;
      Vector u = sample_point(fiber, s);
      std::copy(u.begin(), u.end(), x.begin() + 1);
    }
    return x;
  }
  for (std::size_t k = 0; k < n; ++k) x[k] = s.uniform(-0.6, 0.6);
  return x;
}

LineElement sample_element(const MetricSpec& spec, testing::Sampler& s) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  Vector y;
  do {
    y = s.vector(n, -1.0, 1.0);
  } while (std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0)) < 0.2);
  return {sample_point(spec, s), y};
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("connection frame invariants on every fixture") {
  testing::Sampler s(101);
  for (const char* name : kAllFixtures) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const int n = spec.dimension();
    for (int trial = 0; trial < 20; ++trial) {
      const auto el = sample_element(spec, s);
      const auto f = horizontal_connection(spec, el);
      double sym = 0, inv = 0, euler = 0, gammasym = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          sym = std::max(sym, std::abs(f.g(i, j) - f.g(j, i)));
          double p = 0, e = 0;
          for (int k = 0; k < n; ++k) {
            p += f.g(i, k) * f.g_inv(k, j);
            e += f.cartan(i, j, k) * el.y[static_cast<std::size_t>(k)];
            gammasym = std::max(gammasym, std::abs(f.hconn(i, j, k) - f.hconn(i, k, j)));
          }
          inv = std::max(inv, std::abs(p - (i == j ? 1.0 : 0.0)));
          euler = std::max(euler, std::abs(e));
        }
      CHECK(sym < 1e-10);
      CHECK(inv < 1e-10);
      CHECK(euler < 1e-10);
      CHECK(gammasym < 1e-10);
      CHECK(std::abs(bilinear(f.g, el.y, el.y) - f.F * f.F) < 1e-10);

      LineElement doubled = el;
      for (double& v : doubled.y) v *= 2.0;
      const auto g2 = spray(spec, doubled);
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(g2[static_cast<std::size_t>(i)] - 4.0 * f.spray[static_cast<std::size_t>(i)]) < 1e-10);
      }
    }
  }
}

TEST_CASE("jet derivatives of F^2 agree with Richardson differences") {
  testing::Sampler s(202);
  for (const char* name : kAllFixtures) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const auto n = static_cast<std::size_t>(spec.dimension());
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto el = sample_element(spec, s);
      Vector p = el.x;
      p.insert(p.end(), el.y.begin(), el.y.end());
      std::vector<int> active(2 * n);
      std::iota(active.begin(), active.end(), 0);
      const auto v = jets::seed(p, active, 2);
      const auto e = metrics::squared_norm<jets::Jet>(spec, std::span(v.data(), n), std::span(v.data() + n, n));
      const testing::Field f2 = [&](const testing::Vec& q) {
        const double F = metrics::finsler_function(spec, {Vector(q.begin(), q.begin() + static_cast<long>(n)),
                                                          Vector(q.begin() + static_cast<long>(n), q.end())});
        return F * F;
      };
      for (std::size_t i = 0; i < 2 * n; ++i) {
        const double jet = jets::extract(e, {static_cast<int>(i)});
        worst = std::max(worst, rel(jet, testing::richardson_first(f2, p, i)));
        for (std::size_t j = i; j < 2 * n; ++j) {
          const double jet2 = jets::extract(e, {static_cast<int>(i), static_cast<int>(j)});
          worst = std::max(worst, rel(jet2, testing::richardson_second(f2, p, i, j)));
        }
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("simple metrics") {
  const auto flat = metrics::euclidean(3);
  const LineElement el{{0.1, 0.2, 0.3}, {1.0, -2.0, 0.5}};
  const auto c = curvature(flat, el);
  CHECK(c.frame.g.max_abs() == 1.0);
  CHECK(c.frame.nconn.max_abs() == 0.0);
  CHECK(c.frame.hconn.max_abs() == 0.0);
  CHECK(c.riemann_flag.max_abs() == 0.0);
  CHECK(c.h_curvature.max_abs() == 0.0);
  CHECK(flag_curvature(flat, el, {0.0, 1.0, 0.0}) == 0.0);
  CHECK(check_constant_curvature_form(flat, el, 0.0) < 1e-10);

  const auto a = metrics::constant_riemannian(2, {2.0, 0.3, 0.3, 1.0});
  const auto g = fundamental_tensor(a, {{0.5, 0.5}, {0.3, -0.9}});
  CHECK(g(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g(0, 1) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(g(1, 1) == doctest::Approx(1.0).epsilon(1e-14));

  // t'' - sin t cos t (u')^2 = 0 on the unit sphere, so 2 G^t = -sin t cos t (u')^2
  const auto sphere = metrics::round_sphere(2, 1.0);
  const double t = 0.8, ud = 1.7;
  const auto G = spray(sphere, {{t, 0.2}, {0.4, ud}});
  CHECK(2.0 * G[0] == doctest::Approx(-std::sin(t) * std::cos(t) * ud * ud).epsilon(1e-13));
  CHECK(2.0 * G[1] == doctest::Approx(2.0 * std::cos(t) / std::sin(t) * 0.4 * ud).epsilon(1e-13));

  CHECK_THROWS_AS(flag_curvature(sphere, {{t, 0.2}, {0.4, ud}}, {0.8, 2 * ud}), DegenerateFlag);
  CHECK_THROWS_AS(curvature(sphere, {{0.01, 0.2}, {0.4, ud}}), DomainError);
}

TEST_CASE("randers fundamental tensor matches a finite-difference Hessian") {
  Vector a{1.0, 0.0, 0.0, 1.0};
  const auto r = metrics::randers(metrics::Riemannian{a, {}, {}}, 2, {0.3, 0.0});
  const LineElement el{{0.0, 0.0}, {1.0, 0.0}};
  const auto g = fundamental_tensor(r, el);
  const testing::Field f2 = [&](const testing::Vec& y) {
    const double F = metrics::finsler_function(r, {el.x, y});
    return F * F;
  };
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      CHECK(g(static_cast<int>(i), static_cast<int>(j)) ==
            doctest::Approx(0.5 * testing::richardson_second(f2, el.y, i, j)).epsilon(1e-8));
  CHECK(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) > 0.0);
  CHECK(g(0, 0) > 0.0);
}

TEST_CASE("Riemannian specs reduce to the classical Christoffel and Riemann oracle") {
  testing::Sampler s(303);
  for (const char* name : kRiemannian) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const int n = spec.dimension();
    double christoffel = 0.0, riemann = 0.0, sectional = 0.0, torsion = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      const auto el = sample_element(spec, s);
      const auto c = curvature(spec, el);
      const auto oracle = testing::classical_geometry(spec, el.x);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) {
            const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j), uk = static_cast<std::size_t>(k);
            christoffel = std::max(christoffel, rel(c.frame.hconn(i, j, k), oracle.christoffel[ui][uj][uk]));
            torsion = std::max(torsion, std::abs(c.frame.cartan(i, j, k)));
            for (int l = 0; l < n; ++l)
              riemann = std::max(riemann, rel(c.h_curvature(i, j, k, l), oracle.riemann[ui][uj][uk][static_cast<std::size_t>(l)]));
          }
      for (int flag = 0; flag < 5; ++flag) {
        const auto X = s.vector(static_cast<std::size_t>(n), -1.0, 1.0);
        sectional = std::max(sectional, rel(flag_curvature(c, el.y, X), testing::sectional_curvature(oracle, el.y, X)));
      }
    }
    CHECK(christoffel < 1e-6);
    CHECK(riemann < 1e-6);
    CHECK(sectional < 1e-6);
    CHECK(torsion < 1e-10);
  }
}

TEST_CASE("flag curvature properties") {
  testing::Sampler s(404);
  for (const char* name : {"randers_bump_n2.json", "bump_n2.json", "sphere_c2_n3.json", "linear_n3.json"}) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const int n = spec.dimension();
    for (int trial = 0; trial < 10; ++trial) {
      const auto el = sample_element(spec, s);
      const auto c = curvature(spec, el);
      const auto X = s.vector(static_cast<std::size_t>(n), -1.0, 1.0);
      const auto Y = s.vector(static_cast<std::size_t>(n), -1.0, 1.0);
      const double K = flag_curvature(c, el.y, X);

      const auto ry = apply(c.riemann_flag, el.y);
      for (double v : ry) CHECK(std::abs(v) < 1e-8);
      CHECK(std::abs(bilinear(c.frame.g, apply(c.riemann_flag, X), Y) -
                     bilinear(c.frame.g, apply(c.riemann_flag, Y), X)) < 1e-8);

      for (auto [lambda, mu] : {std::pair{2.0, 0.0}, {1.0, 3.0}, {-1.0, 1.0}}) {
        Vector Z(X.size());
        for (std::size_t i = 0; i < Z.size(); ++i) Z[i] = lambda * X[i] + mu * el.y[i];
        CHECK(std::abs(flag_curvature(c, el.y, Z) - K) < 1e-8 * std::max(1.0, std::abs(K)));
      }
      for (double lambda : {0.5, 3.0}) {
        LineElement scaled = el;
        for (double& v : scaled.y) v *= lambda;
        CHECK(std::abs(flag_curvature(spec, scaled, X) - K) < 1e-8 * std::max(1.0, std::abs(K)));
      }

      // R^i_k = R^i_hkl y^h y^l
      double contraction = 0.0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          double v = 0.0;
          for (int h = 0; h < n; ++h)
            for (int l = 0; l < n; ++l)
              v += c.h_curvature(i, h, k, l) * el.y[static_cast<std::size_t>(h)] * el.y[static_cast<std::size_t>(l)];
          contraction = std::max(contraction, std::abs(v - c.riemann_flag(i, k)));
        }
      CHECK(contraction < 1e-6);
    }
  }
}

TEST_CASE("warped block structure of the fundamental tensor") {
  testing::Sampler s(505);
  for (const char* name : {"sphere_c05_n2.json", "sphere_c1_n3.json", "sphere_c2_n3.json"}) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const auto sol = metrics::default_solution(spec);
    const int n = spec.dimension();
    for (int trial = 0; trial < 50; ++trial) {
      const auto el = sample_element(spec, s);
      const auto g = fundamental_tensor(spec, el);
      const auto f = fundamental_tensor(*spec.warped().fiber, {Vector(el.x.begin() + 1, el.x.end()),
                                                               Vector(el.y.begin() + 1, el.y.end())});
      CHECK(std::abs(g(0, 0) - 1.0) < 1e-10);
      const double w = std::pow(sol.derivative(1, el.x[0]), 2);
      for (int b = 1; b < n; ++b) {
        CHECK(std::abs(g(0, b)) < 1e-10);
        for (int c = 1; c < n; ++c) CHECK(std::abs(g(b, c) - w * f(b - 1, c - 1)) <= 1e-8 * std::abs(g(b, c)) + 1e-14);
      }
    }
  }
}

TEST_CASE("sphere fixtures have constant curvature C^2") {
  testing::Sampler s(606);
  for (const char* name : {"sphere_c05_n2.json", "sphere_c1_n2.json", "sphere_c2_n2.json", "sphere_c05_n3.json",
                           "sphere_c1_n3.json", "sphere_c2_n3.json", "stereographic_n2.json"}) {
    INFO(name);
    const auto spec = metrics::load_metric(fixture(name));
    const double K = *spec.expected_curvature;
    double worst = 0.0, form = 0.0, wrong = 1e300, anti = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto el = sample_element(spec, s);
      const auto c = curvature(spec, el);
      const auto X = s.vector(static_cast<std::size_t>(spec.dimension()), -1.0, 1.0);
      worst = std::max(worst, std::abs(flag_curvature(c, el.y, X) - K));
      form = std::max(form, constant_form_residual(c, K));
      wrong = std::min(wrong, constant_form_residual(c, K + 1.0));
      anti = std::max(anti, antisymmetry_residual(c.h_curvature));
    }
    CHECK(worst < 1e-6);
    CHECK(form < 1e-6);
    CHECK(wrong > 0.1);
    CHECK(anti < 1e-8);
  }
}

TEST_CASE("curvature decomposition blocks") {
  const auto s2 = metrics::round_sphere(2, 1.0);
  auto r = check_decomposition(s2, {{pi / 2, 0.3}, {0.6, -0.8}}, metrics::sphere_solution(1.0));
  CHECK(r.block1 < 1e-6);
  CHECK(r.block2 < 1e-6);
  CHECK(r.block3 < 1e-6);
  CHECK(r.frequency < 1e-12);
  CHECK(r.warp < 1e-10);
  CHECK(r.substituted < 1e-6);

  const auto s3 = metrics::round_sphere(3, 2.0);
  r = check_decomposition(s3, {{pi / 4, 0.5, 0.2}, {0.3, -0.5, 0.9}}, metrics::sphere_solution(2.0));
  CHECK(r.block1 < 1e-6);
  CHECK(r.block2 < 1e-6);
  CHECK(r.block3 < 1e-6);
  CHECK(r.substituted < 1e-6);

  // A mismatched solution is detected.
  r = check_decomposition(s3, {{pi / 4, 0.5, 0.2}, {0.3, -0.5, 0.9}}, metrics::sphere_solution(1.5));
  CHECK(r.frequency > 0.1);
  CHECK(r.warp > 0.01);

  CHECK_THROWS_AS(check_decomposition(metrics::euclidean(2), {{0.1, 0.1}, {1.0, 0.0}}, metrics::sphere_solution(1.0)),
                  InvalidArgument);
}

TEST_CASE("horizontal Hessian of the special solution") {
  testing::Sampler s(707);
  for (double C : {0.5, 1.0, 2.0}) {
    for (int n : {2, 3}) {
      const auto spec = metrics::round_sphere(n, C);
      const auto sol = metrics::sphere_solution(C);
      double worst = 0.0;
      for (int trial = 0; trial < 30; ++trial) {
        const auto el = sample_element(spec, s);
        const auto f = horizontal_connection(spec, el);
        worst = std::max(worst, hessian_residual(f, el.x[0], sol));
      }
      CHECK(worst < 1e-6);
    }
  }
  const auto spec = metrics::round_sphere(2, 1.0);
  const LineElement el{{pi / 2, 0.1}, {0.3, 0.4}};
  const auto h = horizontal_hessian(spec, el, metrics::sphere_solution(1.0));
  CHECK(std::abs(h(0, 0)) < 1e-12);
  const auto zero = horizontal_hessian(spec, el, metrics::special_solution(1.0, 0.0, 0.0, 0.0));
  CHECK(zero.max_abs() == 0.0);
  // A wrong frequency fails the equation.
  CHECK(hessian_residual(horizontal_connection(spec, el), el.x[0], metrics::sphere_solution(1.3)) > 0.01);
}

TEST_CASE("gradient of rho") {
  const auto spec = metrics::round_sphere(3, 1.0);
  const auto grad = gradient_rho(spec, {{pi / 2, 1.0, 0.5}, {0.2, 0.7, -0.3}}, metrics::sphere_solution(1.0));
  CHECK(grad[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(grad[1]) < 1e-14);
  CHECK(std::abs(grad[2]) < 1e-14);

  const double m = metrics::kPoleMargin;
  const auto near = gradient_rho(spec, {{m, 1.0, 0.5}, {0.2, 0.7, -0.3}}, metrics::sphere_solution(1.0));
  CHECK(near[0] == doctest::Approx(std::sin(m)).epsilon(1e-14));
  CHECK(near[0] == doctest::Approx(m).epsilon(1e-3));

  const auto trivial = gradient_rho(spec, {{1.0, 1.0, 0.5}, {0.2, 0.7, -0.3}}, metrics::special_solution(1.0, 0.0, 0.0, 0.0));
  for (double v : trivial) CHECK(v == 0.0);
}

TEST_CASE("randers negative control is not of constant curvature") {
  const auto spec = metrics::load_metric(fixture("randers_bump_n2.json"));
  testing::Sampler s(808);
  std::vector<double> ks;
  for (int trial = 0; trial < 100; ++trial) {
    const auto el = sample_element(spec, s);
    ks.push_back(flag_curvature(spec, el, s.vector(2, -1.0, 1.0)));
  }
  const double mean = std::accumulate(ks.begin(), ks.end(), 0.0) / static_cast<double>(ks.size());
  double var = 0.0;
  for (double k : ks) var += (k - mean) * (k - mean);
  var /= static_cast<double>(ks.size() - 1);
  CHECK(var > 1e-4);
}
