#ifndef HOMOPHONY_RNG_H_
#define HOMOPHONY_RNG_H_

#include <cstdint>
#include <random>

namespace homophony {

// Seeded generator with a platform-independent uniform draw. Child streams are
// derived from (seed, lane) so parallel work is schedule-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static Rng derive(std::uint64_t seed, std::uint64_t lane) {
    return Rng(mix(seed) ^ mix(lane + 0x632be59bd9b4e019ULL));
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejects the low residue so the modulo is unbiased.
    const std::uint64_t limit = (~std::uint64_t{0} - n + 1) % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x < limit);
    return x % n;
  }

  std::uint64_t next() { return engine_(); }

 private:
  // splitmix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace homophony

#endif  // HOMOPHONY_RNG_H_
