#include "local_jets.hpp"

#include <cmath>
#include <numeric>

#include "finsler/error.hpp"
#include "finsler/metrics/evaluate.hpp"

namespace finsler::geometry::detail {

using jets::Jet;

Jet LocalJets::delta(const Jet& f, int j) const {
  Jet out = f.derivative(x_var(j));
  for (int m = 0; m < n; ++m) out -= nconn[at(m, j)] * f.derivative(y_var(m));
  return out;
}

double LocalJets::delta_value(const Jet& f, int j) const {
  double out = jets::extract(f, {x_var(j)});
  for (int m = 0; m < n; ++m) out -= nconn[at(m, j)].value() * jets::extract(f, {y_var(m)});
  return out;
}

std::vector<Jet> invert(std::vector<Jet> m, int n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<Jet> inv(un * un, Jet(0.0));
  for (std::size_t i = 0; i < un; ++i) inv[i * un + i] = Jet(1.0);
  for (std::size_t col = 0; col < un; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < un; ++r) {
      if (std::abs(m[r * un + col].value()) > std::abs(m[pivot * un + col].value())) pivot = r;
    }
    if (m[pivot * un + col].value() == 0.0) throw InvalidMetric("fundamental tensor is singular");
    if (pivot != col) {
      for (std::size_t c = 0; c < un; ++c) {
        std::swap(m[pivot * un + c], m[col * un + c]);
        std::swap(inv[pivot * un + c], inv[col * un + c]);
      }
    }
    const Jet scale = jets::reciprocal(m[col * un + col]);
    for (std::size_t c = 0; c < un; ++c) {
      m[col * un + c] = m[col * un + c] * scale;
      inv[col * un + c] = inv[col * un + c] * scale;
    }
    for (std::size_t r = 0; r < un; ++r) {
      if (r == col) continue;
      const Jet factor = m[r * un + col];
      if (factor.is_constant() && factor.value() == 0.0) continue;
      for (std::size_t c = 0; c < un; ++c) {
        m[r * un + c] -= factor * m[col * un + c];
        inv[r * un + c] -= factor * inv[col * un + c];
      }
    }
  }
  return inv;
}

LocalJets local_jets(const metrics::MetricSpec& spec, std::span<const double> x,
                     std::span<const double> y, int order, bool with_hconn) {
  if (order < 2 || order > jets::kMaxOrder) throw InvalidArgument("local jets need order in [2, 4]");
  LocalJets L;
  const int n = spec.dimension();
  L.n = n;
  L.order = order;
  const auto un = static_cast<std::size_t>(n);

  std::vector<double> point(x.begin(), x.end());
  point.insert(point.end(), y.begin(), y.end());
  std::vector<int> active(2 * un);
  std::iota(active.begin(), active.end(), 0);
  L.vars = jets::seed(point, active, order);
  std::span<const Jet> xs(L.vars.data(), un);
  std::span<const Jet> ys(L.vars.data() + un, un);
  L.energy = metrics::squared_norm<Jet>(spec, xs, ys);

  std::vector<Jet> dy_energy(un), dx_energy(un);
  for (int i = 0; i < n; ++i) {
    dy_energy[static_cast<std::size_t>(i)] = L.energy.derivative(L.y_var(i));
    dx_energy[static_cast<std::size_t>(i)] = L.energy.derivative(L.x_var(i));
  }
  L.g.assign(un * un, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet gij = 0.5 * dy_energy[static_cast<std::size_t>(i)].derivative(L.y_var(j));
      L.g[L.at(j, i)] = gij;
      L.g[L.at(i, j)] = std::move(gij);
    }
  }
  L.g_inv = invert(L.g, n);

  // G^i = 1/4 g^il (d^2E/dy^l dx^k y^k - dE/dx^l)
  std::vector<Jet> rhs(un);
  for (int l = 0; l < n; ++l) {
    Jet acc = -dx_energy[static_cast<std::size_t>(l)];
    for (int k = 0; k < n; ++k) {
      acc += dy_energy[static_cast<std::size_t>(l)].derivative(L.x_var(k)) * ys[static_cast<std::size_t>(k)];
    }
    rhs[static_cast<std::size_t>(l)] = std::move(acc);
  }
  L.spray.assign(un, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    Jet acc(0.0);
    for (int l = 0; l < n; ++l) acc += L.g_inv[L.at(i, l)] * rhs[static_cast<std::size_t>(l)];
    L.spray[static_cast<std::size_t>(i)] = 0.25 * acc;
  }

  if (order < 3) return L;

  L.cartan.assign(un * un * un, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) L.cartan[L.at(i, j, k)] = 0.5 * L.g[L.at(i, j)].derivative(L.y_var(k));
    }
  }
  L.nconn.assign(un * un, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) L.nconn[L.at(i, j)] = L.spray[static_cast<std::size_t>(i)].derivative(L.y_var(j));
  }

  if (!with_hconn) return L;

  // dg[(l,k),j] = delta_j g_lk
  std::vector<Jet> dg(un * un * un, Jet(0.0));
  for (int l = 0; l < n; ++l) {
    for (int k = l; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        Jet d = L.delta(L.g[L.at(l, k)], j);
        dg[L.at(k, l, j)] = d;
        dg[L.at(l, k, j)] = std::move(d);
      }
    }
  }
  L.hconn.assign(un * un * un, Jet(0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = j; k < n; ++k) {
        Jet acc(0.0);
        for (int l = 0; l < n; ++l) {
          acc += L.g_inv[L.at(i, l)] * (dg[L.at(l, k, j)] + dg[L.at(j, l, k)] - dg[L.at(j, k, l)]);
        }
        acc *= 0.5;
        L.hconn[L.at(i, k, j)] = acc;
        L.hconn[L.at(i, j, k)] = std::move(acc);
      }
    }
  }
  return L;
}

}  // namespace finsler::geometry::detail
