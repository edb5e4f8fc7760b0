#include "finsler/geometry/hessian.hpp"

#include <cmath>

namespace finsler::geometry {

Matrix horizontal_hessian(const ConnectionFrame& frame, double t, const metrics::SpecialSolution& sol) {
  const int n = frame.n;
  const double d1 = sol.derivative(1, t);
  const double d2 = sol.derivative(2, t);
  Matrix h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = (i == 0 && j == 0 ? d2 : 0.0) - frame.hconn(0, i, j) * d1;
  }
  return h;
}

Matrix horizontal_hessian(const MetricSpec& spec, const LineElement& el,
                          const metrics::SpecialSolution& sol) {
  return horizontal_hessian(horizontal_connection(spec, el), el.x[0], sol);
}

double hessian_residual(const ConnectionFrame& frame, double t, const metrics::SpecialSolution& sol) {
  const Matrix h = horizontal_hessian(frame, t, sol);
  const double phi = sol.phi(t);
  double worst = 0.0;
  for (int i = 0; i < frame.n; ++i) {
    for (int j = 0; j < frame.n; ++j) worst = std::max(worst, std::abs(h(i, j) - phi * frame.g(i, j)));
  }
  return worst;
}

Vector gradient_rho(const MetricSpec& spec, const LineElement& el, const metrics::SpecialSolution& sol) {
  const ConnectionFrame f = horizontal_connection(spec, el);
  const double d1 = sol.derivative(1, el.x[0]);
  Vector out(static_cast<std::size_t>(f.n));
  for (int i = 0; i < f.n; ++i) out[static_cast<std::size_t>(i)] = f.g_inv(i, 0) * d1;
  return out;
}

}  // namespace finsler::geometry
