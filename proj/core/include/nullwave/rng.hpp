#pragma once

// Counter-based random numbers. Every draw is a pure function of a 64-bit key,
// so a value never depends on which thread produced it or in which order.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace nullwave::rng {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t value) noexcept {
  return mix64(key ^ mix64(value ^ 0xd1b54a32d192ed03ULL));
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return combine(combine(seed, a), b);
}

constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) noexcept {
  return combine(key(seed, a, b), c);
}

/// Seed of path `path` under master seed `master`.
constexpr std::uint64_t path_seed(std::uint64_t master, std::uint64_t path) noexcept {
  return key(master, 0x7061746873ULL, path);
}

/// Uniform on (0, 1], 53 bits.
constexpr double uniform_open(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by multiply-shift.
inline std::uint64_t below(std::uint64_t bits, std::uint64_t bound) noexcept {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(bits) * bound) >> 64);
}

/// Two independent standard normals from one key (Box-Muller).
inline std::pair<double, double> gaussian_pair(std::uint64_t k) noexcept {
  const double u1 = uniform_open(mix64(k));
  const double u2 = uniform_open(mix64(k ^ 0xa0761d6478bd642fULL));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

inline double gaussian(std::uint64_t k) noexcept { return gaussian_pair(k).first; }

/// SplitMix64 sequence started at `key`, usable as a standard uniform random bit
/// generator. The n-th output depends only on (key, n).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit constexpr SplitMix64(std::uint64_t key) noexcept : state_(key) {}
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

}  // namespace nullwave::rng
