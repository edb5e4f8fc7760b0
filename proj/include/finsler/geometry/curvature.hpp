#pragma once

#include "finsler/geometry/connection.hpp"
#include "finsler/metrics/special_solution.hpp"

namespace finsler::geometry {

/// Curvature at one line element.
///
/// riemann_flag is the flag-curvature operator R_y (R^i_k X^k = R(X, y)y):
///
///   R^i_k = 2 dG^i/dx^k - y^j d^2G^i/dx^j dy^k + 2 G^j d^2G^i/dy^j dy^k - N^i_j N^j_k
///
/// h_curvature is the Cartan hh-curvature with R^i_hjk the i-th component of
/// R(delta_j, delta_k) applied to the h-th basis section:
///
///   R^i_hjk = delta_j Gamma^i_hk - delta_k Gamma^i_hj + Gamma^i_mj Gamma^m_hk
///             - Gamma^i_mk Gamma^m_hj + C^i_hm R^m_jk,
///   R^m_jk  = delta_j N^m_k - delta_k N^m_j.
///
/// The two agree through R^i_k = R^i_hkl y^h y^l.
struct CurvatureData {
  ConnectionFrame frame;
  Matrix riemann_flag;
  Tensor4 h_curvature;
};

CurvatureData curvature(const MetricSpec& spec, const LineElement& el);

Matrix riemann_flag_operator(const MetricSpec& spec, const LineElement& el);
Tensor4 h_curvature_tensor(const MetricSpec& spec, const LineElement& el);

/// K(x, y, X) = g(R_y X, X) / (g(y,y) g(X,X) - g(X,y)^2). Throws DegenerateFlag
/// when the denominator is below 1e-10 |X|^2 |y|^2 (Euclidean norms).
double flag_curvature(const MetricSpec& spec, const LineElement& el, const Vector& X);
double flag_curvature(const CurvatureData& c, const Vector& y, const Vector& X);

/// The h-curvature re-indexed so that Q^i_hjk is the i-th component of
/// R(e_h, e_j) e_k, i.e. Q^i_hjk = R^i_khj. In this slot order a space of
/// constant curvature K reads Q^i_hjk = K (delta^i_h g_jk - delta^i_j g_hk) and
/// the warped-product blocks carry no extra sign.
Tensor4 operator_form(const Tensor4& h_curvature);

/// K (delta^i_h g_jk - delta^i_j g_hk)
Tensor4 constant_curvature_form(const Matrix& g, double K);

/// max |Q - K (delta g - delta g)| over all components.
double check_constant_curvature_form(const MetricSpec& spec, const LineElement& el, double K);
double constant_form_residual(const CurvatureData& c, double K);

/// Largest violation of the two-term antisymmetry Q^i_hjk = -Q^i_jhk.
double antisymmetry_residual(const Tensor4& h_curvature);

/// Residuals of the adapted-coordinate block structure of a warped product
/// dt^2 + rho'(t)^2 f over a fiber f (Greek indices run over the fiber):
///   block1      Q^a_1c1 = -Q^a_c11 = (rho'''/rho') delta^a_c
///   block2      Q^1_1cb = -Q^1_c1b = -rho' rho''' f_cb
///   block3      Q^a_dcb = Qbar^a_dcb - rho''^2 (f_cb delta^a_d - f_db delta^a_c)
///   frequency   | -rho'''/rho' - C^2 |
///   warp        max |g_cb - rho'^2 f_cb|
///   substituted max |Q^a_dcb - C^2 (g_cb delta^a_d - g_db delta^a_c)|
/// C is the metric's warp frequency; Qbar and f are computed on the fiber at (u, ybar).
struct DecompositionResidual {
  double block1 = 0.0;
  double block2 = 0.0;
  double block3 = 0.0;
  double frequency = 0.0;
  double warp = 0.0;
  double substituted = 0.0;
};

/// Throws InvalidArgument unless spec is warped, DomainError near poles.
DecompositionResidual check_decomposition(const MetricSpec& spec, const LineElement& el,
                                          const metrics::SpecialSolution& sol);

}  // namespace finsler::geometry
