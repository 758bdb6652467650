#ifndef NLW_CORE_RNG_HPP
#define NLW_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

namespace nlw {

// Counter-based randomness. A draw is a pure function of
// (master seed, stream id, sample index, counter), so samples are
// reproducible bit-for-bit regardless of evaluation order or thread count.

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Keyed generator: bits(counter) never depends on earlier calls.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t key() const noexcept { return key_; }

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ ^ mix64(counter ^ 0x5851f42d4c957f2dULL));
  }

  /// Uniform on the open interval (0,1).
  double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on counters (2c, 2c+1).
  double gaussian(std::uint64_t counter) const noexcept {
    return box_muller(uniform(2 * counter), uniform(2 * counter + 1));
  }

  static double box_muller(double u1, double u2) noexcept {
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double rademacher(std::uint64_t counter) const noexcept {
    return (bits(counter) >> 63) ? 1.0 : -1.0;
  }

  constexpr CounterRng child(std::uint64_t index) const noexcept {
    return CounterRng(mix64(key_ + mix64(index + 0x632be59bd9b4e019ULL)));
  }

 private:
  std::uint64_t key_;
};

/// (master seed, stream id) -> per-sample generators. The key of sample i is
/// mix64(mix64(master ^ fnv1a(stream)) + mix64(i + const)).
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string stream_id = "default";

  CounterRng stream() const noexcept { return CounterRng(mix64(master_seed ^ fnv1a64(stream_id))); }
  CounterRng sample(std::uint64_t index) const noexcept { return stream().child(index); }
};

/// Sequential adapter over a CounterRng for scalar streams.
class SequentialRng {
 public:
  explicit SequentialRng(CounterRng rng) noexcept : rng_(rng) {}

  double uniform() noexcept { return rng_.uniform(next_++); }
  double gaussian() noexcept {
    const double u1 = uniform();
    return CounterRng::box_muller(u1, uniform());
  }
  double rademacher() noexcept { return rng_.rademacher(next_++); }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace nlw

#endif
