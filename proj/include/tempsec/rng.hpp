#ifndef TEMPSEC_RNG_HPP
#define TEMPSEC_RNG_HPP

#include <cstdint>

namespace tempsec {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ seeded through splitmix64.  Independent streams are derived
/// from a (master seed, stream index) pair, so trial i always sees the same
/// draws no matter how trials are scheduled across threads.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }

  static Xoshiro256pp stream(std::uint64_t master, std::uint64_t index) {
    std::uint64_t mix = master;
    (void)splitmix64(mix);
    mix ^= 0xd1b54a32d192ed03ULL + index * 0x9e3779b97f4a7c15ULL;
    return Xoshiro256pp(mix);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in (0, 1]; used for strictly positive durations.
  double uniform_pos01() { return 1.0 - uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

}  // namespace tempsec

#endif
