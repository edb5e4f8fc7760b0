#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace finsler::geometry {

using Vector = std::vector<double>;

/// Dense array with `Rank` indices, each running over [0, n). Row-major.
template <std::size_t Rank>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(int n, double fill = 0.0) : n_(n), data_(size_for(n), fill) {}

  int dim() const { return n_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(n);
    return s;
  }
  std::size_t offset(const std::array<int, Rank>& idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return o;
  }

  int n_ = 0;
  std::vector<double> data_;
};

using Matrix = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

/// u^T m v
inline double bilinear(const Matrix& m, const Vector& u, const Vector& v) {
  double s = 0.0;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) s += u[static_cast<std::size_t>(i)] * m(i, j) * v[static_cast<std::size_t>(j)];
  }
  return s;
}

inline Vector apply(const Matrix& m, const Vector& v) {
  Vector out(static_cast<std::size_t>(m.dim()), 0.0);
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) out[static_cast<std::size_t>(i)] += m(i, j) * v[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace finsler::geometry
