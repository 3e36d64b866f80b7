#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace remgibbs {

/// SplitMix64 finalizer. Used to decorrelate seeds, never as a generator.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `master`.
///
/// The split is counter based: the seed depends only on (master, index), so a
/// replica draws the same numbers whichever worker runs it and however many
/// workers there are.
constexpr std::uint64_t substream_seed(std::uint64_t master,
                                       std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// A random stream owned by one replica.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>
/// distributions directly.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  static Stream substream(std::uint64_t master, std::uint64_t index) {
    return Stream(substream_seed(master, index));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return engine_(); }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard exponential, strictly positive.
  double exponential();

  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace remgibbs
