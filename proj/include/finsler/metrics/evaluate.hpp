#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "finsler/jets/jet.hpp"
#include "finsler/metrics/metric_spec.hpp"

namespace finsler::metrics {

namespace detail {

inline double value_of(double v) { return v; }
inline double value_of(const jets::Jet& j) { return j.value(); }

/// Throws DomainError when C t is inside a pole band.
void check_pole(double C, double t);

/// a_ij at x (row-major), including the conformal factor.
std::vector<double> riemannian_matrix(const Riemannian& r, int n, std::span<const double> x);

/// Throws InvalidMetric unless the alpha-norm of b(x) is < 1 and a(x) is
/// positive definite.
void check_randers_convexity(const Randers& r, int n, std::span<const double> x);

template <class T>
T conformal_factor(const Conformal& c, std::span<const T> x) {
  using std::exp;
  using jets::exp;
  switch (c.kind) {
    case Conformal::Kind::none:
      return T(1.0);
    case Conformal::Kind::bump: {
      T r2(0.0);
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double ck = k < c.center.size() ? c.center[k] : 0.0;
        T d = x[k] - ck;
        r2 += d * d;
      }
      return 1.0 + c.amplitude * exp(r2 * (-1.0 / (c.width * c.width)));
    }
    case Conformal::Kind::stereographic: {
      T s(1.0);
      for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * x[k];
      return (4.0 * c.radius * c.radius) / (s * s);
    }
  }
  return T(1.0);
}

/// a(x)(y, y)
template <class T>
T quadratic_form(const Riemannian& r, int n, std::span<const T> x, std::span<const T> y) {
  const auto un = static_cast<std::size_t>(n);
  T q(0.0);
  for (std::size_t i = 0; i < un; ++i) {
    T row(0.0);
    for (std::size_t j = 0; j < un; ++j) {
      if (r.gradient.empty()) {
        const double a = r.constant[i * un + j];
        if (a != 0.0) row += a * y[j];
      } else {
        T a(r.constant[i * un + j]);
        for (std::size_t k = 0; k < un; ++k) {
          const double g = r.gradient[(k * un + i) * un + j];
          if (g != 0.0) a += g * x[k];
        }
        row += a * y[j];
      }
    }
    q += y[i] * row;
  }
  if (r.conformal.kind != Conformal::Kind::none) q = q * conformal_factor<T>(r.conformal, x);
  return q;
}

}  // namespace detail

/// F^2(x, y), evaluated with doubles or jets. The jet version carries every
/// mixed partial in the seeded variables.
template <class T>
T squared_norm(const MetricSpec& spec, std::span<const T> x, std::span<const T> y) {
  using std::sin;
  using std::sqrt;
  using jets::sin;
  using jets::sqrt;
  const int n = spec.dimension();
  const auto& family = spec.family();
  if (const auto* r = std::get_if<Riemannian>(&family)) {
    return detail::quadratic_form<T>(*r, n, x, y);
  }
  if (const auto* r = std::get_if<Randers>(&family)) {
    std::vector<double> xv(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) xv[k] = detail::value_of(x[k]);
    detail::check_randers_convexity(*r, n, xv);
    const auto un = static_cast<std::size_t>(n);
    T beta(0.0);
    for (std::size_t i = 0; i < un; ++i) {
      T b(r->b[i]);
      if (!r->b_gradient.empty()) {
        for (std::size_t k = 0; k < un; ++k) b += r->b_gradient[k * un + i] * x[k];
      }
      beta += b * y[i];
    }
    T f = sqrt(detail::quadratic_form<T>(r->alpha, n, x, y)) + beta;
    return f * f;
  }
  const auto& w = std::get<Warped>(family);
  detail::check_pole(w.C, detail::value_of(x[0]));
  T s = sin(w.C * x[0]);
  return y[0] * y[0] + s * s * squared_norm<T>(*w.fiber, x.subspan(1), y.subspan(1));
}

/// F(x, y) > 0; validates the line element first.
double finsler_function(const MetricSpec& spec, const LineElement& el);

/// F for a jet-valued line element (no validation beyond the evaluator's own
/// domain checks).
jets::Jet finsler_function(const MetricSpec& spec, std::span<const jets::Jet> x,
                           std::span<const jets::Jet> y);

}  // namespace finsler::metrics
