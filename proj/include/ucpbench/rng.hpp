#pragma once

// Deterministic random number generation. All randomness in the library flows
// through this generator so that results are reproducible bit-for-bit across
// platforms and standard library versions (std::uniform_*_distribution gives
// no such guarantee).
//
// Sub-seed derivation: derive_seed(base, tag, index) mixes the base seed with
// an FNV-1a hash of a purpose tag and an index through splitmix64. Every
// component that needs its own stream (folds, trees, Monte Carlo runs, the
// synthetic generator) derives its seed this way from the single user seed.

#include <cstdint>
#include <cstddef>
#include <cmath>
#include <string_view>
#include <vector>

namespace ucpbench {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                                 std::uint64_t index = 0) {
  std::uint64_t s = base;
  std::uint64_t a = splitmix64_next(s);
  s ^= fnv1a64(tag);
  std::uint64_t b = splitmix64_next(s);
  s ^= index * 0x9e3779b97f4a7c15ULL;
  std::uint64_t c = splitmix64_next(s);
  return a ^ (b << 1) ^ c;
}

// xoshiro256++ seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi] inclusive, rejection sampled (no modulo bias).
  int next_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return lo + static_cast<int>(v % span);
  }

  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_int(0, static_cast<int>(n) - 1));
  }

  // Standard normal via Box-Muller; stateless between calls.
  double next_normal() {
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Standard normal truncated to [-bound, bound], by rejection.
  double next_truncated_normal(double bound) {
    double z;
    do {
      z = next_normal();
    } while (std::fabs(z) > bound);
    return z;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = next_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace ucpbench
