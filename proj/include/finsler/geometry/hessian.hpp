#pragma once

#include "finsler/geometry/connection.hpp"
#include "finsler/metrics/special_solution.hpp"

namespace finsler::geometry {

/// Horizontal Hessian of rho(x^1) under the Cartan horizontal connection:
///   Hess_ij = d^2 rho/dx^i dx^j - Gamma^k_ij(x, y) d rho/dx^k
/// (delta_j reduces to d/dx^j on functions of x alone). rho is taken as a
/// function of the first coordinate for every metric family.
Matrix horizontal_hessian(const MetricSpec& spec, const LineElement& el,
                          const metrics::SpecialSolution& sol);
Matrix horizontal_hessian(const ConnectionFrame& frame, double t, const metrics::SpecialSolution& sol);

/// max |Hess_ij - phi(t) g_ij| with phi = -K rho + B.
double hessian_residual(const ConnectionFrame& frame, double t, const metrics::SpecialSolution& sol);

/// rho^i = g^ij d rho/dx^j.
Vector gradient_rho(const MetricSpec& spec, const LineElement& el, const metrics::SpecialSolution& sol);

}  // namespace finsler::geometry
