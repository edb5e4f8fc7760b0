#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace finsler::jets {

inline constexpr int kMaxOrder = 4;
inline constexpr int kMaxVars = 8;

/// Monomial bookkeeping for truncated Taylor polynomials in `vars` variables.
///
/// Monomials of total degree <= kMaxOrder are stored graded (degree 0, then
/// all of degree 1, ...) and lexicographically inside a degree. Because of the
/// grading, the monomials of degree <= p form a prefix of the list, so a jet of
/// order p simply uses the first size(p) slots and every table below can be
/// shared across orders.
class JetSpace {
 public:
  using Exponents = std::array<std::uint8_t, kMaxVars>;

  /// Product table grouped by output monomial: the pairs (lhs[q], rhs[q]) for
  /// q in [offsets[k], offsets[k+1]) are all monomial pairs whose product is
  /// monomial k. Outputs are in graded order, so truncation to order p means
  /// evaluating only the first size(p) outputs.
  struct ProductTable {
    std::vector<std::uint32_t> offsets;
    std::vector<std::int32_t> lhs;
    std::vector<std::int32_t> rhs;
  };

  /// Shared, lazily built space for `vars` in [1, kMaxVars]. Thread-safe.
  static const JetSpace& get(int vars);

  int vars() const { return vars_; }
  std::size_t size(int order) const { return prefix_[static_cast<std::size_t>(order)]; }
  std::size_t monomial_count() const { return exponents_.size(); }

  const Exponents& exponents(std::size_t index) const { return exponents_[index]; }
  int degree(std::size_t index) const { return degree_[index]; }

  /// Rank of a monomial given by its exponent vector; throws InvalidArgument
  /// when the degree exceeds kMaxOrder or the length is not vars().
  std::size_t rank(std::span<const int> exponents) const;

  /// Index of monomial(index) * v_var; only valid for degree(index) < kMaxOrder.
  std::size_t raised(std::size_t index, int var) const {
    return raised_[index * static_cast<std::size_t>(vars_) + static_cast<std::size_t>(var)];
  }

  const ProductTable& products() const { return products_; }

 private:
  explicit JetSpace(int vars);

  static std::uint32_t pack(const Exponents& e);

  int vars_;
  std::array<std::size_t, kMaxOrder + 1> prefix_{};
  std::vector<Exponents> exponents_;
  std::vector<int> degree_;
  std::unordered_map<std::uint32_t, std::uint32_t> rank_;
  std::vector<std::size_t> raised_;
  ProductTable products_;
};

}  // namespace finsler::jets
