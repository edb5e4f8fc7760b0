#pragma once

#include <vector>

#include "finsler/metrics/metric_spec.hpp"

namespace finsler::metrics {

/// Closed-form solution of rho'' = -K rho + B along a unit-speed parameter t,
/// fixed by rho(0) and rho'(0). The positive case K = C^2 > 0, B = 0 is the one
/// the sphere characterization is about; other cases are still solved but
/// report in_scope() == false.
class SpecialSolution {
 public:
  SpecialSolution(double K, double B, double initial_value, double initial_slope);

  double K() const { return K_; }
  double B() const { return B_; }
  /// sqrt(K); zero when K <= 0.
  double C() const { return K_ > 0.0 ? frequency_ : 0.0; }
  /// Amplitude of the oscillating part (for K > 0: rho = B/K + A cos(C t - phase)).
  double amplitude() const;
  double initial_value() const { return rho0_; }
  double initial_slope() const { return slope0_; }

  /// K > 0 and B == 0.
  bool in_scope() const { return K_ > 0.0 && B_ == 0.0; }

  /// d^k rho / dt^k for k in [0, 3].
  double derivative(int k, double t) const;
  double operator()(double t) const { return derivative(0, t); }
  /// phi = -K rho + B, the factor in the Hessian equation.
  double phi(double t) const { return -K_ * derivative(0, t) + B_; }

 private:
  double K_;
  double B_;
  double rho0_;
  double slope0_;
  double frequency_;  // sqrt(|K|)
  double a_;          // coefficient of cos / cosh (or the constant term for K = 0)
  double b_;          // coefficient of sin / sinh (or the slope for K = 0)
};

/// Solution with the given initial data; throws UnsupportedCase when
/// `require_scope` is set and the case is not K > 0, B = 0.
SpecialSolution special_solution(double K, double B, double initial_value, double initial_slope,
                                 bool require_scope = false);

/// rho(t) = -(1/C) cos(C t): K = C^2, B = 0, rho(0) = -1/C, rho'(0) = 0.
SpecialSolution sphere_solution(double C);

SpecialSolution from_parameters(const SolutionParameters& p);

/// Default rho for a metric: the declared one, else the sphere solution for
/// warped metrics, else the linear probe rho = x^1 (K = B = 0).
SpecialSolution default_solution(const MetricSpec& spec);

/// Zeros of rho' in [0, 2 pi / C), ascending. Requires K > 0; throws
/// UnsupportedCase otherwise and InvalidArgument for the trivial solution.
std::vector<double> critical_points(const SpecialSolution& sol);

}  // namespace finsler::metrics
