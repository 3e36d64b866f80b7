#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "remgibbs/measure.hpp"
#include "remgibbs/rng.hpp"

namespace remgibbs {

inline constexpr int kMaxBruteForceN = 25;

/// 2^N i.i.d. standard Gaussian energies and their ascending order.
struct EnergySample {
  int N = 0;
  std::vector<double> x;
  /// x[sorted_idx[0]] <= x[sorted_idx[1]] <= ...
  std::vector<std::uint32_t> sorted_idx;

  /// X_{j,2^N}, 1-based.
  double order_stat(std::size_t j) const { return x[sorted_idx.at(j - 1)]; }
};

/// Throws ResourceError unless 1 <= N <= 25.
EnergySample sample_energies(int N, Stream& rng);

/// Builds a sample from explicit energies (size must be a power of two).
EnergySample energies_from_values(std::vector<double> x);

/// sqrt(2 log 2).
double beta_c();

/// beta sqrt(N): the factor multiplying X in the Gibbs exponent.
double gibbs_exponent(int N, double beta);

/// (beta / beta_c) sqrt(2 log 2^N); algebraically equal to gibbs_exponent.
double gibbs_exponent_normalized(int N, double beta);

/// log sum_i exp(-beta sqrt(N) x_i), via log-sum-exp.
double log_partition_function(std::span<const double> x, int N, double beta);
double partition_function_log(const EnergySample& sample, double beta);

/// F_N = -log Z_N / (beta N). Throws DomainError if beta == 0.
double free_energy(const EnergySample& sample, double beta);

/// Large-N limit: -beta/2 - beta_c^2/(2 beta) below beta_c, -beta_c above.
/// Throws DomainError if beta <= 0.
double free_energy_limit(double beta);

/// Normalized Gibbs weights in ascending-energy order (largest weight first),
/// labelled by configuration index.
DiscreteMeasure gibbs_measure(const EnergySample& sample, double beta);

}  // namespace remgibbs
