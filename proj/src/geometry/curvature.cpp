#include "finsler/geometry/curvature.hpp"

#include <cmath>

#include "finsler/error.hpp"
#include "local_jets.hpp"

namespace finsler::geometry {

CurvatureData curvature(const MetricSpec& spec, const LineElement& el) {
  metrics::validate_line_element(spec, el);
  auto L = detail::local_jets(spec, el.x, el.y, 4, true);
  const int n = spec.dimension();
  const auto& y = el.y;

  CurvatureData c;
  ConnectionFrame& f = c.frame;
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

  c.riemann_flag = Matrix(n);
  for (int i = 0; i < n; ++i) {
    const auto& G = L.spray[static_cast<std::size_t>(i)];
    for (int k = 0; k < n; ++k) {
      double r = 2.0 * jets::extract(G, {L.x_var(k)});
      for (int j = 0; j < n; ++j) {
        r -= y[static_cast<std::size_t>(j)] * jets::extract(G, {L.x_var(j), L.y_var(k)});
        r += 2.0 * f.spray[static_cast<std::size_t>(j)] * jets::extract(G, {L.y_var(j), L.y_var(k)});
        r -= f.nconn(i, j) * f.nconn(j, k);
      }
      c.riemann_flag(i, k) = r;
    }
  }

  // R^m_jk = delta_j N^m_k - delta_k N^m_j
  Tensor3 nl_curv(n);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        nl_curv(m, j, k) = L.delta_value(L.nconn[L.at(m, k)], j) - L.delta_value(L.nconn[L.at(m, j)], k);
      }
    }
  }
  // C^i_hm = g^il C_lhm
  Tensor3 cartan_up(n);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      for (int m = 0; m < n; ++m) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += f.g_inv(i, l) * f.cartan(l, h, m);
        cartan_up(i, h, m) = s;
      }
    }
  }
  // dgamma(i,h,k,j) = delta_j Gamma^i_hk
  Tensor4 dgamma(n);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) dgamma(i, h, k, j) = L.delta_value(L.hconn[L.at(i, h, k)], j);
      }
    }
  }
  c.h_curvature = Tensor4(n);
  const Tensor3& gam = f.hconn;
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double r = dgamma(i, h, k, j) - dgamma(i, h, j, k);
          for (int m = 0; m < n; ++m) {
            r += gam(i, m, j) * gam(m, h, k) - gam(i, m, k) * gam(m, h, j);
            r += cartan_up(i, h, m) * nl_curv(m, j, k);
          }
          c.h_curvature(i, h, j, k) = r;
        }
      }
    }
  }
  return c;
}

Matrix riemann_flag_operator(const MetricSpec& spec, const LineElement& el) {
  return curvature(spec, el).riemann_flag;
}

Tensor4 h_curvature_tensor(const MetricSpec& spec, const LineElement& el) {
  return curvature(spec, el).h_curvature;
}

double flag_curvature(const CurvatureData& c, const Vector& y, const Vector& X) {
  const Matrix& g = c.frame.g;
  const double gyy = bilinear(g, y, y);
  const double gxx = bilinear(g, X, X);
  const double gxy = bilinear(g, X, y);
  const double den = gyy * gxx - gxy * gxy;
  double ex = 0.0, ey = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ex += X[i] * X[i];
    ey += y[i] * y[i];
  }
  if (!(den >= 1e-10 * ex * ey)) {
    throw DegenerateFlag("transverse edge is parallel to the flagpole");
  }
  const Vector ry = apply(c.riemann_flag, X);
  return bilinear(g, ry, X) / den;
}

double flag_curvature(const MetricSpec& spec, const LineElement& el, const Vector& X) {
  if (X.size() != el.y.size()) throw InvalidArgument("transverse edge has the wrong dimension");
  return flag_curvature(curvature(spec, el), el.y, X);
}

Tensor4 operator_form(const Tensor4& r) {
  const int n = r.dim();
  Tensor4 q(n);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) q(i, h, j, k) = r(i, k, h, j);
  return q;
}

Tensor4 constant_curvature_form(const Matrix& g, double K) {
  const int n = g.dim();
  Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          t(i, h, j, k) = K * ((i == h ? g(j, k) : 0.0) - (i == j ? g(h, k) : 0.0));
        }
  return t;
}

double constant_form_residual(const CurvatureData& c, double K) {
  const Tensor4 q = operator_form(c.h_curvature);
  const Tensor4 t = constant_curvature_form(c.frame.g, K);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) worst = std::max(worst, std::abs(q.data()[i] - t.data()[i]));
  return worst;
}

double check_constant_curvature_form(const MetricSpec& spec, const LineElement& el, double K) {
  return constant_form_residual(curvature(spec, el), K);
}

double antisymmetry_residual(const Tensor4& r) {
  const Tensor4 q = operator_form(r);
  const int n = q.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(q(i, h, j, k) + q(i, j, h, k)));
  return worst;
}

DecompositionResidual check_decomposition(const MetricSpec& spec, const LineElement& el,
                                          const metrics::SpecialSolution& sol) {
  const auto& w = spec.warped();
  const CurvatureData c = curvature(spec, el);
  const int n = spec.dimension();
  const int m = n - 1;

  LineElement fiber_el{{el.x.begin() + 1, el.x.end()}, {el.y.begin() + 1, el.y.end()}};
  const CurvatureData fc = curvature(*w.fiber, fiber_el);
  const Matrix& f = fc.frame.g;
  const Tensor4 qbar = operator_form(fc.h_curvature);
  const Tensor4 q = operator_form(c.h_curvature);
  const Matrix& g = c.frame.g;

  const double t = el.x[0];
  const double d1 = sol.derivative(1, t);
  const double d2 = sol.derivative(2, t);
  const double d3 = sol.derivative(3, t);
  if (d1 == 0.0) throw DomainError("rho' vanishes at the line element (critical point)");
  const double ratio = d3 / d1;

  DecompositionResidual r;
  auto worst = [](double& slot, double v) { slot = std::max(slot, std::abs(v)); };
  for (int a = 0; a < m; ++a) {
    for (int cc = 0; cc < m; ++cc) {
      const double delta = a == cc ? 1.0 : 0.0;
      worst(r.block1, q(a + 1, 0, cc + 1, 0) - ratio * delta);
      worst(r.block1, q(a + 1, cc + 1, 0, 0) + ratio * delta);
    }
  }
  for (int cc = 0; cc < m; ++cc) {
    for (int b = 0; b < m; ++b) {
      worst(r.block2, q(0, 0, cc + 1, b + 1) + d1 * d3 * f(cc, b));
      worst(r.block2, q(0, cc + 1, 0, b + 1) - d1 * d3 * f(cc, b));
      worst(r.warp, g(cc + 1, b + 1) - d1 * d1 * f(cc, b));
    }
  }
  const double K = w.C * w.C;
  for (int a = 0; a < m; ++a)
    for (int d = 0; d < m; ++d)
      for (int cc = 0; cc < m; ++cc)
        for (int b = 0; b < m; ++b) {
          const double dad = a == d ? 1.0 : 0.0;
          const double dac = a == cc ? 1.0 : 0.0;
          const double expected = qbar(a, d, cc, b) - d2 * d2 * (f(cc, b) * dad - f(d, b) * dac);
          worst(r.block3, q(a + 1, d + 1, cc + 1, b + 1) - expected);
          const double substituted =
              K * (g(cc + 1, b + 1) * dad - g(d + 1, b + 1) * dac);
          worst(r.substituted, q(a + 1, d + 1, cc + 1, b + 1) - substituted);
        }
  r.frequency = std::abs(-ratio - K);
  return r;
}

}  // namespace finsler::geometry
