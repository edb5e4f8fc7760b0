#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "finsler/geometry/tensor.hpp"
#include "finsler/metrics/metric_spec.hpp"

namespace finsler::verify::detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// mt19937_64 with a 53-bit uniform; each (seed, stream, index) triple gets an
/// independent generator so results do not depend on scheduling.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : engine_(splitmix64(seed ^ splitmix64(stream ^ splitmix64(index)))) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 engine_;
};

/// Chart point: warped levels draw C t uniformly in [margin, pi - margin];
/// other coordinates draw from the chart box shrunk by 10% (or [-1, 1] when
/// unbounded).
geometry::Vector sample_point(const metrics::MetricSpec& spec, Rng& rng);

/// Uniform in [-1, 1]^n with Euclidean norm >= 0.1.
geometry::Vector sample_direction(std::size_t n, Rng& rng);

/// f(i) for i in [0, count), evaluated on up to `threads` workers; results in
/// index order. The first exception thrown by any worker is rethrown.
template <class F>
auto parallel_map(int count, unsigned threads, F f) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<R> out(static_cast<std::size_t>(count));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(1, count)));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        out[static_cast<std::size_t>(i)] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace finsler::verify::detail
