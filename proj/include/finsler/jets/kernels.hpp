#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace finsler::jets::kernels {

/// The data-parallel inner loops of jet arithmetic. Every instruction-set
/// variant must agree with the scalar reference up to floating-point
/// reassociation (see tests/unit/simd_equivalence_test.cpp).
struct KernelSet {
  std::string_view name;

  /// out[k] = sum over q in [offsets[k], offsets[k+1]) of a[lhs[q]] * b[rhs[q]],
  /// for k in [0, outputs).
  void (*truncated_product)(const double* a, const double* b, double* out,
                            const std::uint32_t* offsets, const std::int32_t* lhs,
                            const std::int32_t* rhs, std::size_t outputs);

  /// out[k] = alpha * a[k] + beta * b[k]
  void (*linear_combination)(double alpha, const double* a, double beta, const double* b,
                             double* out, std::size_t n);

  /// y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
};

const KernelSet& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelSet* avx2_kernels();

/// Kernel set used by Jet arithmetic. Chosen once at first use: the best set
/// the CPU supports, unless FINSLER_SIMD=scalar is set in the environment.
const KernelSet& active();

/// Overrides the dispatch choice ("scalar" or "avx2"); returns false when the
/// requested set is unavailable on this machine. Not meant to race with jet
/// arithmetic on other threads.
bool select(std::string_view name);

}  // namespace finsler::jets::kernels
