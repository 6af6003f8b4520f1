#pragma once

#include <cmath>
#include <cstdint>

namespace rdst {

inline constexpr std::uint64_t kRngGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based random stream. Draw j of stream s under seed k is
// mix64(key(k, s) + j * kRngGamma), so any draw depends only on
// (seed, stream, counter) and never on thread scheduling. Sampling one
// stream per work item makes parallel generation reproducible.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix64(mix64(seed + kRngGamma) ^ mix64(stream * kRngGamma + 1))) {}

  std::uint64_t next_u64() noexcept {
    counter_ += kRngGamma;
    return mix64(key_ + counter_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi); returns lo exactly when lo == hi.
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_double();
  }

  // Uniform integer in [0, n); n must be >= 1. Multiply-shift mapping,
  // bias is O(n / 2^64).
  std::uint64_t next_below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool bernoulli(double p) noexcept { return next_double() < p; }

  // Standard normal via Box-Muller; always consumes two draws.
  double gaussian() noexcept {
    const double u1 =
        (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rdst
