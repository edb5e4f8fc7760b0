#pragma once

#include <span>
#include <vector>

#include "finsler/jets/jet.hpp"
#include "finsler/metrics/metric_spec.hpp"

namespace finsler::geometry::detail {

/// Jet-valued connection quantities at one line element, all over the 2n
/// variables (x^0..x^{n-1}, y^0..y^{n-1}). With F^2 seeded at order p:
/// g, g_inv and spray carry order p-2, cartan, nconn and hconn order p-3.
struct LocalJets {
  int n = 0;
  int order = 0;
  std::vector<jets::Jet> vars;
  jets::Jet energy;  // F^2
  std::vector<jets::Jet> g;
  std::vector<jets::Jet> g_inv;
  std::vector<jets::Jet> cartan;  // C_ijk, only when order >= 3
  std::vector<jets::Jet> spray;
  std::vector<jets::Jet> nconn;   // only when order >= 3
  std::vector<jets::Jet> hconn;   // only when order >= 3 and requested

  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i * n + j); }
  std::size_t at(int i, int j, int k) const { return static_cast<std::size_t>((i * n + j) * n + k); }

  int x_var(int i) const { return i; }
  int y_var(int i) const { return n + i; }

  /// delta_j f = df/dx^j - N^m_j df/dy^m as a jet of order min(order(f) - 1, order(N)).
  jets::Jet delta(const jets::Jet& f, int j) const;
  /// Value of delta_j f for a jet of order >= 1.
  double delta_value(const jets::Jet& f, int j) const;
};

/// `order` in [2, 4]. Throws InvalidMetric if g is singular.
LocalJets local_jets(const metrics::MetricSpec& spec, std::span<const double> x,
                     std::span<const double> y, int order, bool with_hconn);

/// Inverse of an n x n jet matrix by Gauss-Jordan elimination with partial
/// pivoting on the values.
std::vector<jets::Jet> invert(std::vector<jets::Jet> m, int n);

}  // namespace finsler::geometry::detail
