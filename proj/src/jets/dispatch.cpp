#include <atomic>
#include <cstdlib>
#include <string_view>

#include "finsler/jets/kernels.hpp"

namespace finsler::jets::kernels {

#if defined(FINSLER_HAVE_AVX2)
namespace detail {
const KernelSet& avx2_set();
}
#endif

namespace {

bool cpu_has_avx2() {
#if defined(FINSLER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet* initial_choice() {
  if (const char* env = std::getenv("FINSLER_SIMD"); env && std::string_view(env) == "scalar") {
    return &scalar_kernels();
  }
  if (const KernelSet* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

std::atomic<const KernelSet*>& current() {
  static std::atomic<const KernelSet*> chosen{initial_choice()};
  return chosen;
}

}  // namespace

const KernelSet* avx2_kernels() {
#if defined(FINSLER_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &detail::avx2_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active() { return *current().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelSet* target = nullptr;
  if (name == "scalar") {
    target = &scalar_kernels();
  } else if (name == "avx2") {
    target = avx2_kernels();
  }
  if (!target) return false;
  current().store(target, std::memory_order_release);
  return true;
}

}  // namespace finsler::jets::kernels
