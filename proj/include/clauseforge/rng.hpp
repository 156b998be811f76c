#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace clauseforge {

inline std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 1469598103934665603ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::uint64_t value, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (i * 8)) & 0xFF;
    h *= 1099511628211ULL;
  }
  return h;
}

// Deterministic RNG wrapper. Shuffles and bounded draws are implemented
// here so output does not depend on the standard library's distribution
// internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform draw in [0, n). n must be positive.
  int uniform(int n) {
    std::uint64_t bound = static_cast<std::uint64_t>(n);
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform(static_cast<int>(i)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives a stream seed from the global seed and a tuple of labels, so
// each task instance owns an independent schedule-free RNG.
inline std::uint64_t derive_seed(std::uint64_t global_seed,
                                 std::initializer_list<std::string_view> labels) {
  std::uint64_t h = fnv1a64(global_seed, 1469598103934665603ULL);
  for (std::string_view label : labels) {
    h = fnv1a64(label, h);
    h = fnv1a64(std::uint64_t{0x9E3779B97F4A7C15ULL}, h);
  }
  return h;
}

}  // namespace clauseforge
