#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace noma {

// Philox4x32-10 counter-based generator.
// Pure function of (counter, key); no internal state.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      counter = single_round(counter, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return counter;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static Counter single_round(const Counter& c, const Key& k) noexcept {
    const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Named link slots within one trial. Each link owns a disjoint counter range.
enum class Link : std::uint32_t {
  kBsToWeak = 0,
  kBsToStrong = 1,
  kStrongToWeak = 2,
  kMimoStrong = 3,
  kMimoWeak = 4,
  kSymbols = 5,
  kNoise = 6,
  kCluster = 7,
};

/// Counter-based random stream addressed by (seed, stream, trial, link).
///
/// The Philox key is derived from (seed, stream); the counter words carry
/// (draw index, link, trial low, trial high). Two streams with the same address
/// produce identical sequences and distinct addresses never share a counter, so
/// draws do not depend on how trials are distributed over workers.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial, Link link) noexcept
      : CounterRng(seed, stream, trial, static_cast<std::uint32_t>(link)) {}

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial,
             std::uint32_t link) noexcept {
    const std::uint64_t mixed = splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
    key_ = {static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
    counter_ = {0u, link, static_cast<std::uint32_t>(trial),
                static_cast<std::uint32_t>(trial >> 32)};
  }

  /// Next raw 128-bit block; advances the draw index.
  Philox4x32::Counter next_block() noexcept {
    auto out = Philox4x32::generate(counter_, key_);
    ++counter_[0];
    return out;
  }

  /// Uniform double in the open interval (0, 1) with 53 random bits.
  double uniform() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const auto block = next_block();
    spare_ = to_unit(block[2], block[3]);
    has_spare_ = true;
    return to_unit(block[0], block[1]);
  }

  /// Zero-mean, unit-variance circularly-symmetric complex Gaussian (Box-Muller).
  std::complex<double> complex_gaussian() noexcept {
    const auto block = next_block();
    const double u1 = to_unit(block[0], block[1]);
    const double u2 = to_unit(block[2], block[3]);
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  /// Uniform integer in [0, 2^bits), bits <= 32.
  std::uint32_t bits(unsigned count) noexcept {
    const auto block = next_block();
    return count >= 32 ? block[0] : block[0] >> (32 - count);
  }

 private:
  static double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t word = (std::uint64_t{hi} << 32 | lo) >> 11;
    return (static_cast<double>(word) + 0.5) * 0x1.0p-53;
  }

  Philox4x32::Key key_{};
  Philox4x32::Counter counter_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace noma
