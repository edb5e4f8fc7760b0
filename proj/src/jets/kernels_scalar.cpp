#include "finsler/jets/kernels.hpp"

namespace finsler::jets::kernels {

namespace {

void truncated_product(const double* a, const double* b, double* out,
                       const std::uint32_t* offsets, const std::int32_t* lhs,
                       const std::int32_t* rhs, std::size_t outputs) {
  for (std::size_t k = 0; k < outputs; ++k) {
    double acc = 0.0;
    for (std::uint32_t q = offsets[k]; q < offsets[k + 1]; ++q) acc += a[lhs[q]] * b[rhs[q]];
    out[k] = acc;
  }
}

void linear_combination(double alpha, const double* a, double beta, const double* b,
                        double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = alpha * a[k] + beta * b[k];
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", &truncated_product, &linear_combination, &axpy};
  return set;
}

}  // namespace finsler::jets::kernels
