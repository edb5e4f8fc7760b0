#include "finsler/metrics/special_solution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finsler/error.hpp"

namespace finsler::metrics {

SpecialSolution::SpecialSolution(double K, double B, double initial_value, double initial_slope)
    : K_(K), B_(B), rho0_(initial_value), slope0_(initial_slope), frequency_(std::sqrt(std::abs(K))) {
  if (!std::isfinite(K) || !std::isfinite(B) || !std::isfinite(initial_value) ||
      !std::isfinite(initial_slope)) {
    throw InvalidArgument("special solution parameters must be finite");
  }
  if (K == 0.0) {
    a_ = initial_value;
    b_ = initial_slope;
  } else {
    a_ = initial_value - B / K;
    b_ = initial_slope / frequency_;
  }
}

double SpecialSolution::amplitude() const {
  if (K_ == 0.0) return 0.0;
  return std::hypot(a_, b_);
}

double SpecialSolution::derivative(int k, double t) const {
  if (k < 0 || k > 3) throw InvalidArgument("special solution derivatives are available up to order 3");
  if (K_ == 0.0) {
    // rho = a + b t + B t^2 / 2
    switch (k) {
      case 0: return a_ + b_ * t + 0.5 * B_ * t * t;
      case 1: return b_ + B_ * t;
      case 2: return B_;
      default: return 0.0;
    }
  }
  const double w = frequency_;
  const double wt = w * t;
  const double wk = std::pow(w, k);
  if (K_ > 0.0) {
    const double c = std::cos(wt);
    const double s = std::sin(wt);
    // d^k/dt^k of a cos + b sin cycles through (c, s) -> (-s, c) -> (-c, -s) -> (s, -c)
    double v = 0.0;
    switch (k) {
      case 0: v = a_ * c + b_ * s; break;
      case 1: v = -a_ * s + b_ * c; break;
      case 2: v = -a_ * c - b_ * s; break;
      default: v = a_ * s - b_ * c; break;
    }
    return (k == 0 ? B_ / K_ : 0.0) + wk * v;
  }
  const double ch = std::cosh(wt);
  const double sh = std::sinh(wt);
  const double v = (k % 2 == 0) ? a_ * ch + b_ * sh : a_ * sh + b_ * ch;
  return (k == 0 ? B_ / K_ : 0.0) + wk * v;
}

SpecialSolution special_solution(double K, double B, double initial_value, double initial_slope,
                                 bool require_scope) {
  SpecialSolution sol(K, B, initial_value, initial_slope);
  if (require_scope && !sol.in_scope()) {
    throw UnsupportedCase("only K > 0, B = 0 is covered by the sphere characterization");
  }
  return sol;
}

SpecialSolution sphere_solution(double C) {
  if (!(C > 0.0)) throw InvalidArgument("sphere solution needs C > 0");
  return SpecialSolution(C * C, 0.0, -1.0 / C, 0.0);
}

SpecialSolution from_parameters(const SolutionParameters& p) {
  return SpecialSolution(p.K, p.B, p.initial_value, p.initial_slope);
}

SpecialSolution default_solution(const MetricSpec& spec) {
  if (spec.solution) return from_parameters(*spec.solution);
  if (spec.is_warped()) return sphere_solution(spec.warped().C);
  return SpecialSolution(0.0, 0.0, 0.0, 1.0);
}

std::vector<double> critical_points(const SpecialSolution& sol) {
  if (!(sol.K() > 0.0)) {
    throw UnsupportedCase("critical points are only computed for K > 0");
  }
  if (sol.amplitude() == 0.0) {
    throw InvalidArgument("trivial solution: rho' vanishes identically");
  }
  // rho' = C (-a sin(C t) + b cos(C t)) = 0  <=>  tan(C t) = b / a
  const double C = sol.C();
  const double period = 2.0 * std::numbers::pi / C;
  const double slope0 = sol.initial_slope();
  const double a = sol.initial_value() - sol.B() / sol.K();
  double first = std::atan2(slope0 / C, a) / C;
  if (first < 0.0) first += std::numbers::pi / C;
  std::vector<double> out{first, first + std::numbers::pi / C};
  for (double& t : out) {
    if (t >= period) t -= period;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace finsler::metrics
