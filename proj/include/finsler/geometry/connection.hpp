#pragma once

#include <span>

#include "finsler/geometry/tensor.hpp"
#include "finsler/metrics/metric_spec.hpp"

namespace finsler::geometry {

using metrics::LineElement;
using metrics::MetricSpec;

/// First-order geometric data at one line element (x, y).
///
///   g_ij     = 1/2 d^2 F^2 / dy^i dy^j
///   cartan   C_ijk = 1/2 d g_ij / dy^k   (the F-scaled torsion is A = F C)
///   spray    G^i = 1/4 g^il (d^2 F^2/dy^l dx^k y^k - dF^2/dx^l)
///   nconn    N^i_j = dG^i / dy^j
///   hconn    Gamma^i_jk = 1/2 g^il (delta_j g_lk + delta_k g_jl - delta_l g_jk),
///            with delta_j = d/dx^j - N^m_j d/dy^m
struct ConnectionFrame {
  int n = 0;
  double F = 0.0;
  Matrix g;
  Matrix g_inv;
  Tensor3 cartan;
  Vector spray;
  Matrix nconn;
  Tensor3 hconn;
};

/// Throws InvalidMetric when g is not positive definite at the line element.
Matrix fundamental_tensor(const MetricSpec& spec, const LineElement& el);

Vector spray(const MetricSpec& spec, const LineElement& el);
/// C_ijk = 1/4 d^3 F^2 / dy^i dy^j dy^k alone (directions seeded only).
Tensor3 cartan_tensor(const MetricSpec& spec, const LineElement& el);

ConnectionFrame horizontal_connection(const MetricSpec& spec, const LineElement& el);

/// Spray and nonlinear connection without line-element validation beyond the
/// metric's own domain checks; the geodesic integrator's right-hand side.
struct SprayData {
  Vector spray;
  Matrix nconn;
};
SprayData spray_and_connection(const MetricSpec& spec, std::span<const double> x,
                               std::span<const double> y);

}  // namespace finsler::geometry
