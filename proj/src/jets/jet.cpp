#include "finsler/jets/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "finsler/error.hpp"
#include "finsler/jets/kernels.hpp"

namespace finsler::jets {

namespace {

constexpr std::array<double, kMaxOrder + 1> kFactorial{1.0, 1.0, 2.0, 6.0, 24.0};

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw InvalidArgument("jet order must be in [0, " + std::to_string(kMaxOrder) + "], got " +
                          std::to_string(order));
  }
}

}  // namespace

Jet Jet::constant(const JetSpace& space, int order, double value) {
  check_order(order);
  std::vector<double> c(space.size(order), 0.0);
  c[0] = value;
  return Jet(&space, order, std::move(c));
}

Jet Jet::variable(const JetSpace& space, int order, double value, int var) {
  if (var < 0 || var >= space.vars()) {
    throw InvalidArgument("variable index " + std::to_string(var) + " outside a " +
                          std::to_string(space.vars()) + "-variable jet space");
  }
  Jet j = constant(space, order, value);
  // Degree-1 monomials follow the constant term in variable order.
  if (order >= 1) j.coeffs_[1 + static_cast<std::size_t>(var)] = 1.0;
  return j;
}

void Jet::adopt_shape(const Jet& other) {
  if (other.is_constant()) return;
  if (is_constant()) {
    const double v = coeffs_[0];
    space_ = other.space_;
    order_ = other.order_;
    coeffs_.assign(space_->size(order_), 0.0);
    coeffs_[0] = v;
    return;
  }
  if (space_ != other.space_) {
    throw InvalidArgument("cannot combine jets over different variable sets");
  }
  if (other.order_ < order_) {
    order_ = other.order_;
    coeffs_.resize(space_->size(order_));
  }
}

double Jet::coefficient(std::span<const int> exponents) const {
  if (is_constant()) {
    for (int e : exponents) {
      if (e != 0) return 0.0;
    }
    return coeffs_[0];
  }
  int degree = 0;
  for (int e : exponents) degree += e;
  if (degree > order_) {
    throw InvalidArgument("multi-index of degree " + std::to_string(degree) +
                          " exceeds jet order " + std::to_string(order_));
  }
  return coeffs_[space_->rank(exponents)];
}

double Jet::partial(std::span<const int> exponents) const {
  double factor = 1.0;
  for (int e : exponents) {
    if (e < 0 || e > kMaxOrder) throw InvalidArgument("exponent outside [0, 4] in multi-index");
    factor *= kFactorial[static_cast<std::size_t>(e)];
  }
  return factor * coefficient(exponents);
}

Jet Jet::derivative(int var) const {
  if (is_constant()) return Jet(0.0);
  if (var < 0 || var >= space_->vars()) {
    throw InvalidArgument("variable index " + std::to_string(var) + " outside jet space");
  }
  if (order_ == 0) {
    throw InvalidArgument("cannot differentiate an order-0 jet");
  }
  const int order = order_ - 1;
  std::vector<double> out(space_->size(order));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double power = space_->exponents(i)[static_cast<std::size_t>(var)] + 1.0;
    out[i] = power * coeffs_[space_->raised(i, var)];
  }
  return Jet(space_, order, std::move(out));
}

Jet Jet::truncated(int order) const {
  check_order(order);
  if (is_constant() || order >= order_) return *this;
  Jet r = *this;
  r.order_ = order;
  r.coeffs_.resize(space_->size(order));
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.is_constant()) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  adopt_shape(rhs);
  kernels::active().linear_combination(1.0, coeffs_.data(), 1.0, rhs.coeffs_.data(),
                                       coeffs_.data(), coeffs_.size());
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (rhs.is_constant()) {
    coeffs_[0] -= rhs.coeffs_[0];
    return *this;
  }
  adopt_shape(rhs);
  kernels::active().linear_combination(1.0, coeffs_.data(), -1.0, rhs.coeffs_.data(),
                                       coeffs_.data(), coeffs_.size());
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) throw DomainError("jet division by zero");
  for (double& c : coeffs_) c /= rhs;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  *this = *this / rhs;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  if (rhs.is_constant()) return lhs * rhs.value();
  if (lhs.is_constant()) return rhs * lhs.value();
  if (lhs.space_ != rhs.space_) {
    throw InvalidArgument("cannot combine jets over different variable sets");
  }
  const int order = std::min(lhs.order_, rhs.order_);
  const JetSpace& space = *lhs.space_;
  std::vector<double> out(space.size(order));
  const auto& table = space.products();
  kernels::active().truncated_product(lhs.coeffs_.data(), rhs.coeffs_.data(), out.data(),
                                      table.offsets.data(), table.lhs.data(), table.rhs.data(),
                                      out.size());
  return Jet(lhs.space_, order, std::move(out));
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  if (rhs.is_constant()) return lhs / rhs.value();
  return lhs * reciprocal(rhs);
}

Jet operator/(double lhs, const Jet& rhs) { return reciprocal(rhs) * lhs; }

Jet compose(const Jet& u, std::span<const double> derivatives) {
  if (u.is_constant()) return Jet(derivatives[0]);
  const int order = u.order_;
  if (static_cast<int>(derivatives.size()) < order + 1) {
    throw InvalidArgument("compose needs derivatives up to the jet order");
  }
  Jet result = Jet::constant(*u.space_, order, derivatives[0]);
  if (order == 0) return result;
  Jet h = u;
  h.coeffs_[0] = 0.0;
  Jet power = h;
  const auto& k = kernels::active();
  for (int n = 1; n <= order; ++n) {
    const double c = derivatives[static_cast<std::size_t>(n)] / kFactorial[static_cast<std::size_t>(n)];
    k.axpy(c, power.coeffs_.data(), result.coeffs_.data(), result.coeffs_.size());
    if (n < order) power = power * h;
  }
  return result;
}

Jet sin(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const std::array<double, kMaxOrder + 1> d{s, c, -s, -c, s};
  return compose(u, d);
}

Jet cos(const Jet& u) {
  const double s = std::sin(u.value());
  const double c = std::cos(u.value());
  const std::array<double, kMaxOrder + 1> d{c, -s, -c, s, c};
  return compose(u, d);
}

Jet exp(const Jet& u) {
  const double e = std::exp(u.value());
  const std::array<double, kMaxOrder + 1> d{e, e, e, e, e};
  return compose(u, d);
}

Jet log(const Jet& u) {
  const double v = u.value();
  if (!(v > 0.0)) throw DomainError("jet log of a non-positive value");
  const double r = 1.0 / v;
  const std::array<double, kMaxOrder + 1> d{std::log(v), r, -r * r, 2.0 * r * r * r,
                                            -6.0 * r * r * r * r};
  return compose(u, d);
}

Jet pow(const Jet& u, double exponent) {
  const double v = u.value();
  if (!(v > 0.0)) throw DomainError("jet pow needs a positive base");
  std::array<double, kMaxOrder + 1> d{};
  double falling = 1.0;
  for (int k = 0; k <= kMaxOrder; ++k) {
    d[static_cast<std::size_t>(k)] = falling * std::pow(v, exponent - k);
    falling *= exponent - k;
  }
  return compose(u, d);
}

Jet sqrt(const Jet& u) {
  if (!(u.value() > 0.0)) throw DomainError("jet sqrt of a non-positive value");
  return pow(u, 0.5);
}

Jet reciprocal(const Jet& u) {
  const double v = u.value();
  if (v == 0.0 || !std::isfinite(v)) throw DomainError("jet division by zero");
  const double r = 1.0 / v;
  const std::array<double, kMaxOrder + 1> d{r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r,
                                            24.0 * r * r * r * r * r};
  return compose(u, d);
}

Jet pow(const Jet& u, int exponent) {
  if (exponent < 0) return reciprocal(pow(u, -exponent));
  Jet result(1.0);
  Jet base = u;
  for (int e = exponent; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  return result;
}

std::vector<Jet> seed(std::span<const double> point, std::span<const int> active, int order) {
  if (order < 1 || order > kMaxOrder) {
    throw InvalidArgument("seed order must be in [1, " + std::to_string(kMaxOrder) + "], got " +
                          std::to_string(order));
  }
  if (active.empty()) throw InvalidArgument("seed needs at least one active variable");
  const JetSpace& space = JetSpace::get(static_cast<int>(active.size()));
  std::vector<int> position(point.size(), -1);
  for (std::size_t p = 0; p < active.size(); ++p) {
    const int idx = active[p];
    if (idx < 0 || static_cast<std::size_t>(idx) >= point.size()) {
      throw InvalidArgument("active index " + std::to_string(idx) + " outside the point");
    }
    if (position[static_cast<std::size_t>(idx)] != -1) {
      throw InvalidArgument("active index " + std::to_string(idx) + " listed twice");
    }
    position[static_cast<std::size_t>(idx)] = static_cast<int>(p);
  }
  std::vector<Jet> out;
  out.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    out.push_back(position[i] >= 0 ? Jet::variable(space, order, point[i], position[i])
                                    : Jet::constant(space, order, point[i]));
  }
  return out;
}

double extract(const Jet& jet, std::span<const int> multi_index) {
  const int vars = jet.is_constant() ? 0 : jet.space()->vars();
  std::array<int, kMaxVars> exponents{};
  for (int v : multi_index) {
    if (v < 0 || (jet.is_constant() ? v >= kMaxVars : v >= vars)) {
      throw InvalidArgument("multi-index refers to variable " + std::to_string(v) +
                            " outside the jet space");
    }
    ++exponents[static_cast<std::size_t>(v)];
  }
  if (static_cast<int>(multi_index.size()) > jet.order()) {
    throw InvalidArgument("multi-index of degree " + std::to_string(multi_index.size()) +
                          " exceeds jet order " + std::to_string(jet.order()));
  }
  if (jet.is_constant()) return multi_index.size() == 0 ? jet.value() : 0.0;
  return jet.partial(std::span<const int>(exponents.data(), static_cast<std::size_t>(vars)));
}

double extract(const Jet& jet, std::initializer_list<int> multi_index) {
  return extract(jet, std::span<const int>(multi_index.begin(), multi_index.size()));
}

}  // namespace finsler::jets
