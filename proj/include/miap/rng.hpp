// Copyright (c) 2026 miap contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef MIAP_RNG_HPP
#define MIAP_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace miap {

// Deterministic RNG. Every random draw in the project flows from a single
// master seed through named sub-streams, so runs are bitwise reproducible
// across platforms. std::mt19937_64 output is fully specified by the
// standard; the uniform/normal transforms below are our own because the
// standard library distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; the spare value is cached so draws come in deterministic
  // order.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(next_u64() % n);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

// Derives the seed of a named sub-stream from the master seed.
inline std::uint64_t substream_seed(std::uint64_t master,
                                    std::string_view name) {
  return detail::splitmix64(master ^ detail::fnv1a(name));
}

// Derives an indexed sub-stream seed, e.g. one stream per trial or per grid
// point, so parallel and serial execution orders agree.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view name,
                                    std::uint64_t index) {
  return detail::splitmix64(substream_seed(master, name) ^
                            detail::splitmix64(index + 0x51ed2701a13fULL));
}

inline Rng substream(std::uint64_t master, std::string_view name) {
  return Rng(substream_seed(master, name));
}

inline Rng substream(std::uint64_t master, std::string_view name,
                     std::uint64_t index) {
  return Rng(substream_seed(master, name, index));
}

}  // namespace miap

#endif  // MIAP_RNG_HPP
