#include "finsler/geometry/connection.hpp"

#include <cmath>
#include <numeric>

#include "finsler/error.hpp"
#include "finsler/metrics/evaluate.hpp"
#include "local_jets.hpp"

namespace finsler::geometry {

namespace {

void require_positive_definite(const Matrix& g) {
  const int n = g.dim();
  Matrix l(n);
  for (int j = 0; j < n; ++j) {
    double d = g(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) {
      throw InvalidMetric("fundamental tensor is not positive definite (metric not strongly convex here)");
    }
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
}

}  // namespace

Matrix fundamental_tensor(const MetricSpec& spec, const LineElement& el) {
  metrics::validate_line_element(spec, el);
  const int n = spec.dimension();
  const auto un = static_cast<std::size_t>(n);
  // Only the y-Hessian is needed, so seed the directions alone.
  std::vector<double> point(el.x);
  point.insert(point.end(), el.y.begin(), el.y.end());
  std::vector<int> active(un);
  std::iota(active.begin(), active.end(), n);
  auto v = jets::seed(point, active, 2);
  std::span<const jets::Jet> xs(v.data(), un), ys(v.data() + un, un);
  jets::Jet e = metrics::squared_norm<jets::Jet>(spec, xs, ys);
  Matrix g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = 0.5 * jets::extract(e, {i, j});
  }
  require_positive_definite(g);
  return g;
}

Tensor3 cartan_tensor(const MetricSpec& spec, const LineElement& el) {
  metrics::validate_line_element(spec, el);
  const int n = spec.dimension();
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> point(el.x);
  point.insert(point.end(), el.y.begin(), el.y.end());
  std::vector<int> active(un);
  std::iota(active.begin(), active.end(), n);
  auto v = jets::seed(point, active, 3);
  std::span<const jets::Jet> xs(v.data(), un), ys(v.data() + un, un);
  jets::Jet e = metrics::squared_norm<jets::Jet>(spec, xs, ys);
  Tensor3 c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const double val = 0.25 * jets::extract(e, {i, j, k});
        c(i, j, k) = c(i, k, j) = c(j, i, k) = c(j, k, i) = c(k, i, j) = c(k, j, i) = val;
      }
  return c;
}

Vector spray(const MetricSpec& spec, const LineElement& el) {
  metrics::validate_line_element(spec, el);
  auto L = detail::local_jets(spec, el.x, el.y, 2, false);
  Vector out(static_cast<std::size_t>(spec.dimension()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = L.spray[i].value();
  return out;
}

SprayData spray_and_connection(const MetricSpec& spec, std::span<const double> x,
                               std::span<const double> y) {
  auto L = detail::local_jets(spec, x, y, 3, false);
  const int n = spec.dimension();
  SprayData out{Vector(static_cast<std::size_t>(n)), Matrix(n)};
  for (int i = 0; i < n; ++i) {
    out.spray[static_cast<std::size_t>(i)] = L.spray[static_cast<std::size_t>(i)].value();
    for (int j = 0; j < n; ++j) out.nconn(i, j) = L.nconn[L.at(i, j)].value();
  }
  return out;
}

ConnectionFrame horizontal_connection(const MetricSpec& spec, const LineElement& el) {
  metrics::validate_line_element(spec, el);
  auto L = detail::local_jets(spec, el.x, el.y, 3, true);
  const int n = spec.dimension();
  ConnectionFrame f;
  f.n = n;
  f.F = std::sqrt(L.energy.value());
  f.g = Matrix(n);
  f.g_inv = Matrix(n);
  f.cartan = Tensor3(n);
  f.spray.assign(static_cast<std::size_t>(n), 0.0);
  f.nconn = Matrix(n);
  f.hconn = Tensor3(n);
  for (int i = 0; i < n; ++i) {
    f.spray[static_cast<std::size_t>(i)] = L.spray[static_cast<std::size_t>(i)].value();
    for (int j = 0; j < n; ++j) {
      f.g(i, j) = L.g[L.at(i, j)].value();
      f.g_inv(i, j) = L.g_inv[L.at(i, j)].value();
      f.nconn(i, j) = L.nconn[L.at(i, j)].value();
      for (int k = 0; k < n; ++k) {
        f.cartan(i, j, k) = L.cartan[L.at(i, j, k)].value();
        f.hconn(i, j, k) = L.hconn[L.at(i, j, k)].value();
      }
    }
  }
  require_positive_definite(f.g);
  return f;
}

}  // namespace finsler::geometry
