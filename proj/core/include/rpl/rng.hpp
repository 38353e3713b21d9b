// Seeded, reproducible random streams.
//
// Every random quantity in the library is drawn from an Rng constructed with
// an explicit 64-bit seed.  Parallel work derives one stream per trial with
// derive_seed(base, {words...}), a splitmix64 chain over the experiment cell
// coordinates and the trial index, so distinct cells never share a stream and
// results do not depend on scheduling.

#ifndef RPL_RNG_HPP
#define RPL_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rpl {

// splitmix64 finalizer; good avalanche, used for seed derivation only.
std::uint64_t mix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> words);

// mt19937_64 with a fixed uniform-and-Box-Muller layer on top, so the
// produced doubles depend only on the seed and the call sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_open() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; pairs are cached.
  double normal();

  // +1 or -1 with equal probability.
  double rademacher() { return (gen_() & 1u) ? 1.0 : -1.0; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace rpl

#endif  // RPL_RNG_HPP
