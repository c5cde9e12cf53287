#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>

namespace mcps {

using Seed = std::uint64_t;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed splitting rule used everywhere a worker needs its own stream:
/// the master seed is mixed with each index in turn through splitmix64,
///   h0 = splitmix64(master), h_{t+1} = splitmix64(h_t ^ splitmix64(index_t)).
/// Streams for (instance, sample) pairs are therefore independent of the
/// order or thread they are evaluated on.
inline constexpr Seed derive_seed(Seed master,
                                  std::initializer_list<std::uint64_t> indices) noexcept {
  std::uint64_t h = splitmix64(master);
  for (auto index : indices) h = splitmix64(h ^ splitmix64(index));
  return h;
}

// mt19937_64 engine with portable integer/real conversions. The standard
// distributions are implementation-defined, so they are not used where
// output must be byte-identical across toolchains.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcps
