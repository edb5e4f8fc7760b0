#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "finsler/jets/jet_space.hpp"

namespace finsler::jets {

/// Truncated multivariate Taylor expansion.
///
/// A Jet of order p over a JetSpace with m variables stores the Taylor
/// coefficients c_a of every monomial h^a with |a| <= p, so that
///
///     f(v0 + h) = sum_a c_a h^a + O(|h|^(p+1)).
///
/// Derivatives are recovered as d^a f(v0) = a! c_a with a! = prod_i a_i!
/// (see partial()). Arithmetic and the elementary functions below apply the
/// truncated Leibniz and chain rules exactly; combining jets of different
/// orders truncates to the lower one.
///
/// A default-constructed or scalar-converted Jet has no space: it is an exact
/// constant and adapts to whatever jet it is combined with.
class Jet {
 public:
  Jet() : coeffs_(1, 0.0) {}
  Jet(double value) : coeffs_(1, value) {}  // NOLINT(google-explicit-constructor)

  static Jet constant(const JetSpace& space, int order, double value);
  /// v_var + h_var: unit first-order coefficient on variable `var`.
  static Jet variable(const JetSpace& space, int order, double value, int var);

  double value() const { return coeffs_[0]; }
  int order() const { return order_; }
  bool is_constant() const { return space_ == nullptr; }
  const JetSpace* space() const { return space_; }

  /// Raw Taylor coefficients in the space's graded monomial order.
  std::span<const double> coefficients() const { return coeffs_; }

  /// Taylor coefficient of the monomial with the given exponents.
  double coefficient(std::span<const int> exponents) const;

  /// Partial derivative d^a f with a given as exponents per variable; this is
  /// the coefficient multiplied by prod_i a_i!.
  double partial(std::span<const int> exponents) const;

  /// Exact derivative d/dv_var of the represented polynomial; order drops by one.
  Jet derivative(int var) const;

  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs) { coeffs_[0] += rhs; return *this; }
  Jet& operator-=(double rhs) { coeffs_[0] -= rhs; return *this; }
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  Jet operator-() const;

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
  friend Jet operator-(double lhs, const Jet& rhs) { return -rhs + lhs; }
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(Jet lhs, double rhs) { return lhs /= rhs; }
  friend Jet operator/(double lhs, const Jet& rhs);

  /// f(u) for a scalar function with derivatives f^(k)(u.value()) given in
  /// `derivatives` (k = 0..order); the building block of the functions below.
  friend Jet compose(const Jet& u, std::span<const double> derivatives);

 private:
  Jet(const JetSpace* space, int order, std::vector<double> coeffs)
      : space_(space), order_(order), coeffs_(std::move(coeffs)) {}

  std::size_t active_size() const { return coeffs_.size(); }
  void adopt_shape(const Jet& other);

  const JetSpace* space_ = nullptr;
  int order_ = kMaxOrder;
  std::vector<double> coeffs_;
};

Jet compose(const Jet& u, std::span<const double> derivatives);

Jet sin(const Jet& u);
Jet cos(const Jet& u);
Jet exp(const Jet& u);
/// Throws DomainError unless u.value() > 0.
Jet log(const Jet& u);
/// Throws DomainError unless u.value() > 0.
Jet sqrt(const Jet& u);
/// Throws DomainError when u.value() == 0.
Jet reciprocal(const Jet& u);
/// Real exponent; throws DomainError unless u.value() > 0.
Jet pow(const Jet& u, double exponent);
/// Integer power by repeated multiplication (negative powers via reciprocal).
Jet pow(const Jet& u, int exponent);
inline Jet square(const Jet& u) { return u * u; }

/// Jet-valued coordinates for `point`: entries listed in `active` become
/// independent variables (in the listed order), the others constants of the
/// same space. `order` must be in [1, kMaxOrder].
std::vector<Jet> seed(std::span<const double> point, std::span<const int> active, int order);

/// Partial derivative for a multiset of active-variable positions, e.g. {0, 1, 1}
/// is d^3 f / dv0 dv1 dv1. An empty multiset returns the value.
double extract(const Jet& jet, std::initializer_list<int> multi_index);
double extract(const Jet& jet, std::span<const int> multi_index);

}  // namespace finsler::jets
