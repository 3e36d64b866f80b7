#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "remgibbs/bounds.hpp"
#include "remgibbs/gibbs_approx.hpp"
#include "remgibbs/measure.hpp"
#include "remgibbs/parallel.hpp"
#include "remgibbs/rng.hpp"

namespace remgibbs {

inline constexpr int kMaxSpinCount = 63;

/// A spin configuration in {-1,+1}^N as an N-bit word.
struct SpinConfig {
  std::uint64_t bits = 0;
  friend bool operator==(SpinConfig, SpinConfig) = default;
};

/// k distinct uniformly chosen N-bit words, in draw order.
/// Requires 1 <= N <= 63 and k <= 2^N.
std::vector<SpinConfig> draw_configs(int N, std::size_t k, Stream& rng);

struct SimulatedGibbs {
  int N = 0;
  double beta = 0.0;
  std::vector<SpinConfig> configs;
  /// Weights in configuration order; labels are the config words.
  DiscreteMeasure measure;
};

/// k smallest of 2^N virtual uniforms mapped through G; O(k) in N.
SimulatedGibbs simulate_v1(int N, double beta, std::size_t k, Stream& rng);

/// k i.i.d. uniforms, W_l = -log U_l, ladder weights; O(k) in N.
SimulatedGibbs simulate_v2(int N, double beta, std::size_t k, Stream& rng,
                           Mu2Weights weights = Mu2Weights::published);

/// Ranks of uniform values against their labels for n <= 8.
///   [0]: P[the i-th smallest of U_1..U_n is U_i for i <= k] = (n-k)!/n!
///   [1]: {U_{k,n} <= k/(n+1)} is independent of that rank event.
/// Both are reported as |estimate - target| against 0 with the null SE.
std::array<BoundReport, 2> lemma32_check(int n, int k, std::size_t trials,
                                         const ReplicaOptions& options);

struct MeasureSummary {
  double w_max = 0.0;
  double participation = 0.0;  // sum of squared weights
  double top1 = 0.0;
  double top2 = 0.0;
  double top5 = 0.0;
  double top10 = 0.0;
  double entropy = 0.0;
};

MeasureSummary summarize(const DiscreteMeasure& mu);
MeasureSummary summarize(const SimulatedGibbs& g);

namespace testing {
/// simulate_v2 with the uniforms supplied by the caller (for forced inputs).
SimulatedGibbs simulate_v2_from_uniforms(int N, double beta, std::span<const double> uniforms,
                                         Stream& rng, Mu2Weights weights = Mu2Weights::published);
}  // namespace testing

}  // namespace remgibbs
