#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "remgibbs/bounds.hpp"
#include "remgibbs/measure.hpp"
#include "remgibbs/order_stats.hpp"
#include "remgibbs/parallel.hpp"
#include "remgibbs/rem.hpp"

namespace remgibbs {

/// log applied p times; throws DomainError if any stage is <= 0.
double iterated_log(double x, int p);

struct KSchedule {
  int N = 0;
  int p = 1;
  std::size_t k = 0;
  /// (log k)(log N) / N, which must be small for the ladder approximation.
  double growth = 0.0;
  bool growth_ok = false;
};

/// k_N = ceil(N log_p(N)), at least 2. Requires N >= 4 and p >= 1.
KSchedule k_schedule(int N, int p, double growth_threshold = 0.5);

/// The Gibbs weights restricted to the k lowest energies:
/// exp(-(beta/beta_c) sqrt(2 log 2^N) (X_{i} - X_{1})), i <= k.
/// Requires beta > beta_c and 1 <= k <= 2^N.
DiscreteMeasure mu1(const EnergySample& sample, double beta, std::size_t k);

/// Same weights with the order statistics realized as X_j = -G(u_j).
/// Labels are 0..k-1 in energy order.
DiscreteMeasure mu1_from_uniforms(const OrderStatSample& sample, int N, double beta,
                                  std::size_t k);

/// Which partial sums weight the j-th point of the exponential-ladder measure.
///   published: w_j = exp(-r sum_{l=2}^{j} W_l / l), the common factor
///              exp(-r W_1) removed so that w_1 = 1.
///   renyi:     w_j = exp(-r sum_{l=1}^{j-1} W_l / l), the law of
///              exp(-r sqrt(2 log n)(X_j - X_1)) in the large-n limit.
/// Here r = beta / beta_c.
enum class Mu2Weights { published, renyi };

/// The exponential-ladder measure on k points (labels 0..k-1).
/// Requires beta > beta_c and 1 <= k <= ladder.size().
DiscreteMeasure mu2(const ExponentialLadder& ladder, double beta, std::size_t k,
                    Mu2Weights weights = Mu2Weights::published);

/// 2 psi_sup / (r - 1) * (k - 1)^(-(r - 1)/2). Requires beta > beta_c, k >= 2.
double bn_bound(std::size_t k, double beta, double psi_sup);

/// 4 / (r - 1) * (k - 1)^(-(r - 1)/2), the total-variation allowance for mu1.
double corollary31_bound(std::size_t k, double beta);

struct ZetaSeries {
  double beta = 0.0;
  std::size_t k = 0;
  double partial = 0.0;
};

/// zeta_k = sum_{j=2}^{k} exp(-r T_j). Requires k <= ladder.size().
ZetaSeries zeta_partial(const ExponentialLadder& ladder, double beta, std::size_t k);

struct ZetaMean {
  /// sum_{j=2}^{k} prod_{l=1}^{j} 1 / (1 + r/l)
  double exact = 0.0;
  /// e^{r^2} (zeta_Riemann(r) - 1); infinite for r <= 1.
  double crude = 0.0;
};

ZetaMean zeta_mean_exact(double beta, std::size_t k);

/// Monte Carlo mean of zeta_k against the exact mean (equality within 3 SE)
/// and against the crude majorant.
std::array<BoundReport, 2> zeta_mean_check(double beta, std::size_t k, std::size_t replicas,
                                           const ReplicaOptions& options);

/// E[zeta_{k+1} - zeta_k | W_1..W_k] = exp(-r T_k) / (1 + r/(k+1)).
double supermartingale_increment_exact(const ExponentialLadder& prefix, double beta);

/// Conditional Monte Carlo of the increment on one frozen prefix of length k.
BoundReport supermartingale_check(double beta, std::size_t k, std::size_t replicas,
                                  const ReplicaOptions& options);

/// Pathwise lower bounds on the ladder measure (published weights) and the
/// directly computed quantities they bound. Evaluated with W_1 removed,
/// which leaves the measure unchanged.
struct PropertyBounds {
  double point_mass_bound = 0.0;
  double point_mass_tv = 0.0;
  double uniform_bound = 0.0;
  double uniform_tv = 0.0;
  double truncation_bound = 0.0;
  double truncation_tv = 0.0;
  /// Upper bound on the mass of the first k_0 points.
  double top_mass_bound = 0.0;
  double top_mass = 0.0;

  bool all_hold(double tolerance = 1e-12) const;
};

/// Requires beta > beta_c and 1 <= k_0 < k_N <= ladder.size().
PropertyBounds property_lower_bounds(const ExponentialLadder& ladder, double beta,
                                     std::size_t k_N, std::size_t k_0);

/// Weight of the first point of mu2.
double minimizer_weight(const ExponentialLadder& ladder, double beta, std::size_t k,
                        Mu2Weights weights = Mu2Weights::published);

/// Per-sample indicator of the good event used for the truncation bound:
/// the minimum-uniform event (delta) and |S_j/j - 1| < 1/2 for
/// k_N <= j <= ceil(n lambda_tilde_n), with U_j = Phi(X_{j}) and
/// S_j = U_j S_{n+1}, S_{n+1} ~ Gamma(n+1) drawn from `rng`.
bool omega_indicator(const EnergySample& sample, std::size_t k_N, Stream& rng,
                     double lambda = 0.5, double alpha = 0.25, double delta = 1.0);

/// Fitted constant C in tv(mu1, mu2) <= C r x exp(C r x), x = (log k)(log N)/N,
/// from coupled pairs: mu1 from the k smallest of 2^N uniforms and mu2 from
/// the ladder W_i = i log(u_{i+1}/u_i) of the same sample. Solves
/// C = W0(tv) / (r x) for the mean and the largest observed tv.
struct ConstantFit {
  double x = 0.0;
  double tv_mean = 0.0;
  double tv_max = 0.0;
  double c_mean = 0.0;
  double c_max = 0.0;
};

ConstantFit fit_tv_constant(int N, double beta, std::size_t k, std::size_t replicas,
                            const ReplicaOptions& options,
                            Mu2Weights weights = Mu2Weights::published);

}  // namespace remgibbs
