#include "sampling.hpp"

#include <cmath>
#include <numbers>

namespace finsler::verify::detail {

geometry::Vector sample_point(const metrics::MetricSpec& spec, Rng& rng) {
  const auto n = static_cast<std::size_t>(spec.dimension());
  geometry::Vector x(n);
  if (spec.is_warped()) {
    const auto& w = spec.warped();
    const double m = metrics::kPoleMargin;
    x[0] = rng.uniform(m, std::numbers::pi - m) / w.C;
    if (n > 1) {
      const auto u = sample_point(*w.fiber, rng);
      std::copy(u.begin(), u.end(), x.begin() + 1);
    }
    return x;
  }
  const auto& chart = spec.chart();
  for (std::size_t k = 0; k < n; ++k) {
    double lo = k < chart.lower.size() ? chart.lower[k] : -1.0;
    double hi = k < chart.upper.size() ? chart.upper[k] : 1.0;
    if (k >= chart.lower.size() && hi < lo + 2.0) lo = hi - 2.0;
    if (k >= chart.upper.size() && hi < lo + 2.0) hi = lo + 2.0;
    const double pad = 0.05 * (hi - lo);
    x[k] = rng.uniform(lo + pad, hi - pad);
  }
  return x;
}

geometry::Vector sample_direction(std::size_t n, Rng& rng) {
  geometry::Vector y(n);
  for (;;) {
    double norm = 0.0;
    for (double& v : y) {
      v = rng.uniform(-1.0, 1.0);
      norm += v * v;
    }
    if (std::sqrt(norm) >= 0.1) return y;
  }
}

}  // namespace finsler::verify::detail
