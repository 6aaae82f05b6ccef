#pragma once

#include <cmath>
#include <cstdint>

namespace atomsim {

// Counter-based stream seeding: shot k of a run draws from an independent
// generator derived from (seed, stream_id), so results do not depend on
// execution order across worker threads.
struct RngSpec {
  uint64_t seed = 0;
  uint64_t stream_id = 0;
};

namespace detail {
inline uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ull;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
inline uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace detail

// splitmix64-seeded xoshiro256**. Hand-rolled so that sampled outputs are
// identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(RngSpec spec) {
    uint64_t x = spec.seed ^ (0x6a09e667f3bcc909ull * (spec.stream_id + 1));
    for (auto& s : s_) s = detail::splitmix64(x);
  }
  Rng(uint64_t seed, uint64_t stream) : Rng(RngSpec{seed, stream}) {}

  uint64_t next_u64() {
    uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  uint32_t uniform_int(uint32_t n) {
    return static_cast<uint32_t>(uniform() * n) % n;
  }

 private:
  uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace atomsim
