#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace circ {

// Deterministic splittable generator. Every randomized routine takes one of
// these so that a single user seed reproduces an entire run. Child generators
// are derived from the *original* seed plus a salt, never from consumed state,
// so the draw order inside one task cannot perturb a sibling task.
//
// The core is splitmix64, which is stable across platforms; none of the
// std::<distribution> adapters are used because their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(mix_(seed ^ kGolden)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() {
    state_ += kGolden;
    return mix_(state_);
  }

  // Deterministic child stream for a named subtask.
  Rng child(std::uint64_t salt) const {
    return Rng(mix_(seed_ + kGolden * (salt + 1)));
  }

  // Uniform integer in [lo, hi], inclusive, via rejection (no modulo bias).
  long uniform_int(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<long>(next());  // full 64-bit range
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
  }

  // Uniform integer in [0, 2^bits).
  mpz_class uniform_bits(int bits) {
    mpz_class acc = 0;
    int got = 0;
    while (got < bits) {
      int take = bits - got >= 64 ? 64 : bits - got;
      std::uint64_t w = next();
      if (take < 64) w &= (std::uint64_t(1) << take) - 1;
      acc <<= take;
      acc += mpz_class(mpz_from_u64_(w));
      got += take;
    }
    return acc;
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix_(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  static mpz_class mpz_from_u64_(std::uint64_t w) {
    mpz_class hi = static_cast<unsigned long>(w >> 32);
    mpz_class lo = static_cast<unsigned long>(w & 0xFFFFFFFFull);
    return (hi << 32) + lo;
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace circ
