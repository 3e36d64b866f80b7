#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "remgibbs/parallel.hpp"
#include "remgibbs/rng.hpp"

namespace remgibbs {

/// One Monte Carlo estimate set against an analytic bound.
/// holds is exactly `empirical <= bound + 3 * se`.
struct BoundReport {
  std::string name;
  double empirical = 0.0;
  double se = 0.0;
  double bound = 0.0;
  bool holds = false;
  std::vector<std::pair<std::string, double>> params;
};

bool bound_rule(double empirical, double se, double bound);

BoundReport make_report(std::string name, double empirical, double se, double bound,
                        std::vector<std::pair<std::string, double>> params = {});

/// Constants of the spacing regime. lambda_n = lambda log(n) / n^alpha and
/// lambda_tilde_n = lambda_n (1 + 2 sqrt(2 (1 - lambda_n) / (lambda n^((1-alpha)/2)))).
struct RegimeParams {
  std::uint64_t n = 0;
  double lambda = 0.5;
  double alpha = 0.25;
  double delta = 1.0;
  double epsilon = 0.3;
  double gamma = 1.0;
  double lambda_n = 0.0;
  double lambda_tilde_n = 0.0;
};

/// Throws DomainError for out-of-range inputs and RegimeError if lambda_n >= 1.
RegimeParams regime(std::uint64_t n, double lambda, double alpha, double delta, double epsilon,
                    double gamma = 1.0);

// Minimum of n uniforms: |log(1/U_1) - log n| <= 2 (1 + delta) log log n
// fails with probability at most 4 / (log n)^(1 + delta).
double lemma21_bound(double n, double delta);
double lemma21_half_width(double n, double delta);
bool lemma21_event(double log_u1, double n, double delta);
BoundReport lemma21_check(std::uint64_t n, double delta, std::size_t replicas,
                          const ReplicaOptions& options);

/// P[|S_n / n - 1| >= eps] <= 2 exp(-n eps^2 / 4).
double ladder_deviation_bound(double n, double eps);
BoundReport ladder_deviation_check(std::uint64_t n, double eps, std::size_t replicas,
                                   const ReplicaOptions& options);

/// Tail bound for sum_{l >= j0} (W_l - 1) / l, valid for t^2 / j0^2 <= 3/4.
double lemma22_bound(double x, double t, std::size_t j0);
BoundReport lemma22_check(double x, double t, std::size_t j0, std::size_t replicas,
                          const ReplicaOptions& options);

/// sum_{l >= z} 1 / l^2 for z >= 1 (exact for small z, trigamma expansion beyond).
double inverse_square_tail(std::size_t z);

/// One draw of sum_{l >= j0} (W_l - 1) / l: `explicit_terms` exact terms plus a
/// Gaussian stand-in for the remainder with its exact variance.
double centered_harmonic_tail(std::size_t j0, Stream& rng, std::size_t explicit_terms = 1024);

/// Both tails of Z = sum_{i >= 1} (W_i - 1) / i against exp(-x sqrt(3)/2 + 15/4).
double z_tail_bound(double x);
std::array<BoundReport, 2> z_tail_check(double x, std::size_t replicas,
                                        const ReplicaOptions& options);

/// 2 exp(-t^2 / 2); requires 0 < t < sqrt(sum of variances).
double bernstein_bound(std::span<const double> variances, double t);
/// Centered Bernoulli(p) summands: P[|Bin(n,p) - np| >= t sqrt(np(1-p))].
BoundReport bernstein_check(double p, std::uint64_t n, double t, std::size_t replicas,
                            const ReplicaOptions& options);

/// 4 (1 / (log n)^(1+delta) + exp(-k/16) / (1 - exp(-1/16))).
double prop22_failure_bound(double n, double delta, double k_n);
/// Lower bound on sqrt(2 log n)(X_j - X_1) for k_n <= j <= n lambda_tilde_n.
double prop22_bulk_rhs(double n, double j, double eps);
/// Lower bound on sqrt(2 log n)(X_j - X_1) for j >= n lambda_tilde_n.
double prop22_far_rhs(double n, double eps, double lambda_n);
/// 2 (1 - sqrt(alpha)) (1 - eps) log n.
double spacing_floor(double n, double alpha, double eps);

struct Prop22Result {
  BoundReport report;
  std::size_t omega_count = 0;
  std::size_t violations_on_omega = 0;
};

/// Per replica: the smallest K = min(ceil(n lambda_tilde_n), cap) order
/// statistics explicitly, the bulk bound at k_n <= j <= K, and the far bound
/// at j = ceil(n lambda_tilde_n) and j = n from exact gamma gap increments.
Prop22Result prop22_check(const RegimeParams& params, std::size_t k_n, std::size_t replicas,
                          const ReplicaOptions& options, std::size_t cap = 2048);

/// 2 exp(-(sqrt(3)/2) (log k)^eta).
double refined_spacing_bound(double k_n, double eta);
/// sqrt(2 log n)(X_j - X_1) >= log j (1 - 1/(log j)^(1-eta)) over
/// j in [k_n, min(k_n n^0.1, k_n + window, n)].
BoundReport refined_spacing_check(std::uint64_t n, std::size_t k_n, double eta,
                                  std::size_t replicas, const ReplicaOptions& options,
                                  std::size_t window = 4096);

/// Event {U_{k_n} <= (1+gamma) k_n / n} and the lemma21 event and
/// {|S_{k_n}/k_n - 1| < 1/2}; failure probability at most 6 / (log n)^(1+delta).
double prop23_failure_bound(double n, double delta);
BoundReport prop23_event_check(std::uint64_t n, std::size_t k_n, double delta, double gamma,
                               std::size_t replicas, const ReplicaOptions& options);

}  // namespace remgibbs
