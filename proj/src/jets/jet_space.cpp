#include "finsler/jets/jet_space.hpp"

#include <memory>
#include <mutex>
#include <string>

#include "finsler/error.hpp"

namespace finsler::jets {

namespace {

// All exponent vectors of total degree `degree`, lexicographically descending
// in the first variable (x^2, xy, y^2, ... for two variables).
void enumerate_degree(int vars, int degree, std::vector<JetSpace::Exponents>& out) {
  JetSpace::Exponents e{};
  auto recurse = [&](auto&& self, int var, int remaining) -> void {
    if (var == vars - 1) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
      out.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(k);
      self(self, var + 1, remaining - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  recurse(recurse, 0, degree);
}

}  // namespace

std::uint32_t JetSpace::pack(const Exponents& e) {
  std::uint32_t key = 0;
  for (std::uint8_t v : e) key = (key << 3) | v;
  return key;
}

JetSpace::JetSpace(int vars) : vars_(vars) {
  for (int d = 0; d <= kMaxOrder; ++d) {
    enumerate_degree(vars, d, exponents_);
    prefix_[static_cast<std::size_t>(d)] = exponents_.size();
  }
  degree_.reserve(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    int d = 0;
    for (std::uint8_t v : exponents_[i]) d += v;
    degree_.push_back(d);
    rank_.emplace(pack(exponents_[i]), static_cast<std::uint32_t>(i));
  }

  const std::size_t count = exponents_.size();
  raised_.assign(count * static_cast<std::size_t>(vars), count);
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] >= kMaxOrder) continue;
    for (int v = 0; v < vars; ++v) {
      Exponents e = exponents_[i];
      ++e[static_cast<std::size_t>(v)];
      raised_[i * static_cast<std::size_t>(vars) + static_cast<std::size_t>(v)] = rank_.at(pack(e));
    }
  }

  // Pairs are enumerated per output by splitting its exponent vector in every
  // possible way, which keeps each output's pairs contiguous.
  products_.offsets.reserve(count + 1);
  products_.offsets.push_back(0);
  for (std::size_t k = 0; k < count; ++k) {
    const Exponents& target = exponents_[k];
    Exponents part{};
    auto split = [&](auto&& self, int var) -> void {
      if (var == vars) {
        Exponents rest{};
        for (int v = 0; v < vars; ++v) {
          auto s = static_cast<std::size_t>(v);
          rest[s] = static_cast<std::uint8_t>(target[s] - part[s]);
        }
        products_.lhs.push_back(static_cast<std::int32_t>(rank_.at(pack(part))));
        products_.rhs.push_back(static_cast<std::int32_t>(rank_.at(pack(rest))));
        return;
      }
      auto s = static_cast<std::size_t>(var);
      for (int a = 0; a <= target[s]; ++a) {
        part[s] = static_cast<std::uint8_t>(a);
        self(self, var + 1);
      }
      part[s] = 0;
    };
    split(split, 0);
    products_.offsets.push_back(static_cast<std::uint32_t>(products_.lhs.size()));
  }
}

const JetSpace& JetSpace::get(int vars) {
  if (vars < 1 || vars > kMaxVars) {
    throw InvalidArgument("jet space needs between 1 and " + std::to_string(kMaxVars) +
                          " variables, got " + std::to_string(vars));
  }
  static std::array<std::unique_ptr<JetSpace>, kMaxVars + 1> spaces;
  static std::array<std::once_flag, kMaxVars + 1> flags;
  auto slot = static_cast<std::size_t>(vars);
  std::call_once(flags[slot], [&] { spaces[slot].reset(new JetSpace(vars)); });
  return *spaces[slot];
}

std::size_t JetSpace::rank(std::span<const int> exponents) const {
  if (static_cast<int>(exponents.size()) != vars_) {
    throw InvalidArgument("multi-index has " + std::to_string(exponents.size()) +
                          " entries for a " + std::to_string(vars_) + "-variable jet");
  }
  Exponents e{};
  int degree = 0;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] < 0) throw InvalidArgument("negative exponent in multi-index");
    degree += exponents[v];
    if (degree > kMaxOrder) {
      throw InvalidArgument("multi-index degree exceeds the maximum jet order " +
                            std::to_string(kMaxOrder));
    }
    e[v] = static_cast<std::uint8_t>(exponents[v]);
  }
  return rank_.at(pack(e));
}

}  // namespace finsler::jets
