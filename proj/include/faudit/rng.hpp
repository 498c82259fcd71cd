#pragma once

#include "faudit/types.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace faudit {

namespace detail {

/// SplitMix64 output function: bijective avalanche mix of a 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Combines a base seed with a stream index into a statistically independent
/// child seed. Two mixing rounds keep (base, a) and (base', a') collisions at
/// the 2^-64 birthday level, so nested derivations never alias in practice.
inline Seed derive_seed(Seed base, std::uint64_t a) {
  return detail::splitmix64(detail::splitmix64(base ^ 0xA24BAED4963EE407ULL) + a);
}

inline Seed derive_seed(Seed base, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(base, a), b);
}

/// FNV-1a hash, used to fold string tokens into seed derivations.
inline Seed hash_token(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Counter-based pseudo-random stream. Every draw is a pure function of
/// (key, counter), so a stream replays bit-for-bit from its seed regardless
/// of what other streams did, and derived streams are independent of the
/// parent's position. That makes per-trial derivation safe under
/// parallel execution.
class Rng {
 public:
  explicit Rng(Seed seed) : key_(detail::splitmix64(seed ^ 0x6A09E667F3BCC909ULL)) {}

  /// Child stream keyed by (this stream, a); does not advance this stream.
  Rng derive(std::uint64_t a) const { return Rng(derive_seed(key_, a)); }

  std::uint64_t next_u64() { return detail::splitmix64(key_ + counter_++ * 0x9E3779B97F4A7C15ULL); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a logarithm argument.
  double uniform01_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; caches the spare deviate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform01_open()));
    double a = 6.283185307179586476925286766559 * uniform01();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

  /// Poisson deviate by Knuth's product method. Large intensities are split
  /// into chunks of 30 and superposed, which is exact and keeps the expected
  /// uniform consumption linear in lambda without any accuracy loss.
  long poisson(double lambda) {
    long total = 0;
    while (lambda > 30.0) {
      total += poisson_knuth(30.0);
      lambda -= 30.0;
    }
    return total + poisson_knuth(lambda);
  }

 private:
  long poisson_knuth(double lambda) {
    const double limit = std::exp(-lambda);
    double prod = 1.0;
    long k = 0;
    do {
      ++k;
      prod *= uniform01();
    } while (prod > limit);
    return k - 1;
  }

  Seed key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace faudit
