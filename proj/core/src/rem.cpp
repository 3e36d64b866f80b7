#include "remgibbs/rem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "remgibbs/errors.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

void index_sort(EnergySample& s) {
  s.sorted_idx.resize(s.x.size());
  std::iota(s.sorted_idx.begin(), s.sorted_idx.end(), std::uint32_t{0});
  std::sort(s.sorted_idx.begin(), s.sorted_idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return s.x[a] < s.x[b] || (s.x[a] == s.x[b] && a < b);
  });
}

}  // namespace

EnergySample sample_energies(int N, Stream& rng) {
  if (N < 1 || N > kMaxBruteForceN) {
    throw ResourceError("sample_energies: N must lie in [1, 25], got " + std::to_string(N));
  }
  EnergySample s;
  s.N = N;
  s.x.resize(std::size_t{1} << N);
  for (double& v : s.x) v = rng.normal();
  index_sort(s);
  return s;
}

EnergySample energies_from_values(std::vector<double> x) {
  if (x.size() < 2 || !std::has_single_bit(x.size()) ||
      x.size() > (std::size_t{1} << kMaxBruteForceN)) {
    throw ResourceError("energies_from_values: size must be 2^N with 1 <= N <= 25");
  }
  EnergySample s;
  s.N = std::countr_zero(x.size());
  s.x = std::move(x);
  index_sort(s);
  return s;
}

double beta_c() { return std::sqrt(2.0 * std::numbers::ln2); }

double gibbs_exponent(int N, double beta) { return beta * std::sqrt(static_cast<double>(N)); }

double gibbs_exponent_normalized(int N, double beta) {
  return (beta / beta_c()) * std::sqrt(2.0 * static_cast<double>(N) * std::numbers::ln2);
}

double log_partition_function(std::span<const double> x, int N, double beta) {
  if (x.empty()) throw DomainError("log_partition_function: empty sample");
  if (!(beta >= 0.0)) throw DomainError("log_partition_function: beta must be >= 0");
  const double a = gibbs_exponent(N, beta);
  const double lowest = *std::min_element(x.begin(), x.end());
  std::vector<double> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) terms[i] = std::exp(-a * (x[i] - lowest));
  return -a * lowest + std::log(compensated_sum(terms));
}

double partition_function_log(const EnergySample& sample, double beta) {
  return log_partition_function(sample.x, sample.N, beta);
}

double free_energy(const EnergySample& sample, double beta) {
  if (beta == 0.0) throw DomainError("free_energy: beta must be nonzero");
  return -partition_function_log(sample, beta) / (beta * static_cast<double>(sample.N));
}

double free_energy_limit(double beta) {
  if (!(beta > 0.0)) throw DomainError("free_energy_limit: beta must be positive");
  const double bc = beta_c();
  if (beta < bc) return -beta / 2.0 - bc * bc / (2.0 * beta);
  return -bc;
}

DiscreteMeasure gibbs_measure(const EnergySample& sample, double beta) {
  if (!(beta >= 0.0)) throw DomainError("gibbs_measure: beta must be >= 0");
  const double a = gibbs_exponent(sample.N, beta);
  const double lowest = sample.x[sample.sorted_idx.front()];
  std::vector<double> logw(sample.x.size());
  std::vector<std::uint64_t> labels(sample.x.size());
  for (std::size_t i = 0; i < logw.size(); ++i) {
    const auto idx = sample.sorted_idx[i];
    labels[i] = idx;
    logw[i] = -a * (sample.x[idx] - lowest);
  }
  return DiscreteMeasure::from_log_weights(std::move(labels), logw);
}

}  // namespace remgibbs
