#include "remgibbs/gibbs_approx.hpp"

#include <algorithm>
#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "remgibbs/errors.hpp"
#include "remgibbs/quantile.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

double ratio_above_critical(double beta, const char* who) {
  const double r = beta / beta_c();
  if (!(r > 1.0)) throw DomainError(std::string(who) + ": requires beta > beta_c");
  return r;
}

// Common-factor-free log weights of the ladder measure.
std::vector<double> ladder_log_weights(const ExponentialLadder& ladder, double r, std::size_t k,
                                       Mu2Weights weights) {
  std::vector<double> logw(k);
  for (std::size_t j = 1; j <= k; ++j) {
    const double sum = weights == Mu2Weights::published
                           ? ladder.weighted_sum(j) - ladder.weighted_sum(1)
                           : ladder.weighted_sum(j - 1);
    logw[j - 1] = -r * sum;
  }
  return logw;
}

}  // namespace

double iterated_log(double x, int p) {
  if (p < 1) throw DomainError("iterated_log: depth must be at least 1");
  for (int i = 0; i < p; ++i) {
    if (!(x > 0.0)) throw DomainError("iterated_log: undefined (argument <= 0)");
    x = std::log(x);
  }
  if (!(x > 0.0)) throw DomainError("iterated_log: value <= 0 at this N");
  return x;
}

KSchedule k_schedule(int N, int p, double growth_threshold) {
  if (N < 4) throw DomainError("k_schedule: N must be at least 4");
  KSchedule s;
  s.N = N;
  s.p = p;
  const double dn = static_cast<double>(N);
  s.k = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(dn * iterated_log(dn, p))));
  s.growth = std::log(static_cast<double>(s.k)) * std::log(dn) / dn;
  s.growth_ok = s.growth < growth_threshold;
  return s;
}

DiscreteMeasure mu1(const EnergySample& sample, double beta, std::size_t k) {
  ratio_above_critical(beta, "mu1");
  if (k < 1 || k > sample.x.size()) throw DomainError("mu1: need 1 <= k <= 2^N");
  const double a = gibbs_exponent(sample.N, beta);
  const double lowest = sample.order_stat(1);
  std::vector<double> logw(k);
  std::vector<std::uint64_t> labels(k);
  for (std::size_t i = 0; i < k; ++i) {
    labels[i] = sample.sorted_idx[i];
    logw[i] = -a * (sample.x[sample.sorted_idx[i]] - lowest);
  }
  return DiscreteMeasure::from_log_weights(std::move(labels), logw);
}

DiscreteMeasure mu1_from_uniforms(const OrderStatSample& sample, int N, double beta,
                                  std::size_t k) {
  ratio_above_critical(beta, "mu1_from_uniforms");
  if (k < 1 || k > sample.k()) throw DomainError("mu1_from_uniforms: need 1 <= k <= sample size");
  const double a = gibbs_exponent(N, beta);
  const double g1 = quantile_exact(TailProbability::from_probability(sample.u[0]));
  std::vector<double> logw(k);
  logw[0] = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    logw[j] = -a * (g1 - quantile_exact(TailProbability::from_probability(sample.u[j])));
  }
  return DiscreteMeasure::from_log_weights(iota_support(k), logw);
}

DiscreteMeasure mu2(const ExponentialLadder& ladder, double beta, std::size_t k,
                    Mu2Weights weights) {
  const double r = ratio_above_critical(beta, "mu2");
  if (k < 1 || k > ladder.size()) throw DomainError("mu2: ladder shorter than k");
  return DiscreteMeasure::from_log_weights(iota_support(k),
                                           ladder_log_weights(ladder, r, k, weights));
}

double bn_bound(std::size_t k, double beta, double psi_sup) {
  const double r = ratio_above_critical(beta, "bn_bound");
  if (k < 2) throw DomainError("bn_bound: k must be at least 2");
  return 2.0 * psi_sup / (r - 1.0) * std::pow(static_cast<double>(k - 1), -(r - 1.0) / 2.0);
}

double corollary31_bound(std::size_t k, double beta) { return 2.0 * bn_bound(k, beta, 1.0); }

ZetaSeries zeta_partial(const ExponentialLadder& ladder, double beta, std::size_t k) {
  if (!(beta > 0.0)) throw DomainError("zeta_partial: beta must be positive");
  if (k > ladder.size()) throw DomainError("zeta_partial: ladder shorter than k");
  const double r = beta / beta_c();
  ZetaSeries z;
  z.beta = beta;
  z.k = k;
  for (std::size_t j = 2; j <= k; ++j) z.partial += std::exp(-r * ladder.weighted_sum(j));
  return z;
}

ZetaMean zeta_mean_exact(double beta, std::size_t k) {
  if (!(beta > 0.0)) throw DomainError("zeta_mean_exact: beta must be positive");
  if (k < 2) throw DomainError("zeta_mean_exact: k must be at least 2");
  const double r = beta / beta_c();
  ZetaMean m;
  double product = 1.0 / (1.0 + r);
  for (std::size_t j = 2; j <= k; ++j) {
    product /= 1.0 + r / static_cast<double>(j);
    m.exact += product;
  }
  m.crude = r > 1.0 ? std::exp(r * r) * (std::riemann_zeta(r) - 1.0)
                    : std::numeric_limits<double>::infinity();
  return m;
}

std::array<BoundReport, 2> zeta_mean_check(double beta, std::size_t k, std::size_t replicas,
                                           const ReplicaOptions& options) {
  const ZetaMean exact = zeta_mean_exact(beta, k);
  if (replicas < 2) throw DomainError("zeta_mean_check: need at least 2 replicas");
  auto values = run_replicas(replicas, options, [&](std::size_t, Stream& rng) {
    return zeta_partial(sample_ladder(k, rng), beta, k).partial;
  });
  const MeanEstimate est = estimate_mean(values);
  const double r = beta / beta_c();
  std::vector<std::pair<std::string, double>> params{
      {"beta_over_betac", r}, {"k", static_cast<double>(k)}, {"replicas", double(replicas)}};
  return {make_report("zeta_mean_exact", std::abs(est.mean - exact.exact), est.se, 0.0, params),
          make_report("zeta_mean_crude", est.mean, est.se, exact.crude, params)};
}

double supermartingale_increment_exact(const ExponentialLadder& prefix, double beta) {
  const double r = beta / beta_c();
  const auto k = static_cast<double>(prefix.size());
  return std::exp(-r * prefix.weighted_sum(prefix.size())) / (1.0 + r / (k + 1.0));
}

BoundReport supermartingale_check(double beta, std::size_t k, std::size_t replicas,
                                  const ReplicaOptions& options) {
  if (!(beta > 0.0)) throw DomainError("supermartingale_check: beta must be positive");
  if (k < 1) throw DomainError("supermartingale_check: k must be at least 1");
  if (replicas < 2) throw DomainError("supermartingale_check: need at least 2 replicas");
  // The frozen prefix comes from a stream outside the replica range.
  Stream prefix_rng = Stream::substream(options.seed, std::numeric_limits<std::uint64_t>::max());
  const ExponentialLadder prefix = sample_ladder(k, prefix_rng);
  const double r = beta / beta_c();
  const double tk = prefix.weighted_sum(k);
  const double next = static_cast<double>(k + 1);
  auto increments = run_replicas(replicas, options, [&](std::size_t, Stream& rng) {
    return std::exp(-r * (tk + rng.exponential() / next));
  });
  const MeanEstimate est = estimate_mean(increments);
  const double exact = supermartingale_increment_exact(prefix, beta);
  return make_report("supermartingale_increment", std::abs(est.mean - exact), est.se, 0.0,
                     {{"beta_over_betac", r},
                      {"k", static_cast<double>(k)},
                      {"exact", exact},
                      {"replicas", static_cast<double>(replicas)}});
}

bool PropertyBounds::all_hold(double tolerance) const {
  return point_mass_tv >= point_mass_bound - tolerance &&
         uniform_tv >= uniform_bound - tolerance &&
         truncation_tv >= truncation_bound - tolerance && top_mass <= top_mass_bound + tolerance;
}

PropertyBounds property_lower_bounds(const ExponentialLadder& ladder, double beta,
                                     std::size_t k_N, std::size_t k_0) {
  const double r = ratio_above_critical(beta, "property_lower_bounds");
  if (k_0 < 1 || k_0 >= k_N) throw DomainError("property_lower_bounds: need 1 <= k_0 < k_N");
  if (k_N > ladder.size()) throw DomainError("property_lower_bounds: ladder shorter than k_N");
  const double t1 = ladder.weighted_sum(1);
  auto term = [&](std::size_t j) { return std::exp(-r * (ladder.weighted_sum(j) - t1)); };
  std::vector<double> tail_terms;
  tail_terms.reserve(k_N - 1);
  for (std::size_t j = 2; j <= k_N; ++j) tail_terms.push_back(term(j));
  const double denom = 1.0 + compensated_sum(tail_terms);

  const DiscreteMeasure full = mu2(ladder, beta, k_N);
  const DiscreteMeasure head = mu2(ladder, beta, k_0);

  PropertyBounds b;
  const double second = term(2);
  b.point_mass_bound = second / (1.0 + second);
  b.point_mass_tv = total_variation(full, DiscreteMeasure::point_mass(0));
  b.uniform_bound = 1.0 / denom - 1.0 / static_cast<double>(k_N);
  b.uniform_tv = total_variation(full, DiscreteMeasure::uniform(k_N));
  b.truncation_bound = term(k_0 + 1) / denom;
  b.truncation_tv = total_variation(head, full);
  b.top_mass_bound = 1.0 - b.truncation_bound;
  b.top_mass = leading_mass(full, k_0);
  return b;
}

double minimizer_weight(const ExponentialLadder& ladder, double beta, std::size_t k,
                        Mu2Weights weights) {
  return mu2(ladder, beta, k, weights).weights().front();
}

bool omega_indicator(const EnergySample& sample, std::size_t k_N, Stream& rng, double lambda,
                     double alpha, double delta) {
  const std::uint64_t n = sample.x.size();
  const double dn = static_cast<double>(n);
  const RegimeParams params = regime(n, lambda, alpha, delta, 0.5);
  const auto far_index = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::ceil(dn * params.lambda_tilde_n)));
  // U_1 = Phi(X_1) = 1 - Phi(-X_1).
  const double log_u1 = log_upper_tail(-sample.order_stat(1));
  if (!lemma21_event(log_u1, dn, delta)) return false;
  const double total = gamma_large_shape(dn + 1.0, rng);
  for (std::uint64_t j = std::max<std::uint64_t>(k_N, 1); j <= far_index; ++j) {
    const double s = std_normal_cdf(sample.order_stat(j)) * total;
    if (!(std::abs(s / static_cast<double>(j) - 1.0) < 0.5)) return false;
  }
  return true;
}

ConstantFit fit_tv_constant(int N, double beta, std::size_t k, std::size_t replicas,
                            const ReplicaOptions& options, Mu2Weights weights) {
  const double r = ratio_above_critical(beta, "fit_tv_constant");
  if (N < 2 || N > 63) throw DomainError("fit_tv_constant: N must lie in [2, 63]");
  if (k < 2) throw DomainError("fit_tv_constant: k must be at least 2");
  if (replicas < 1) throw DomainError("fit_tv_constant: need at least one replica");
  const std::uint64_t n = std::uint64_t{1} << N;
  auto tvs = run_replicas(replicas, options, [&](std::size_t, Stream& rng) {
    const OrderStatSample sample = topk_uniform(n, k + 1, rng);
    const DiscreteMeasure first = mu1_from_uniforms(sample, N, beta, k);
    const DiscreteMeasure second = mu2(malmquist_ladder(sample), beta, k, weights);
    return total_variation(first, second);
  });
  ConstantFit fit;
  const double dn = static_cast<double>(N);
  fit.x = std::log(static_cast<double>(k)) * std::log(dn) / dn;
  fit.tv_mean = estimate_mean(tvs).mean;
  fit.tv_max = *std::max_element(tvs.begin(), tvs.end());
  fit.c_mean = boost::math::lambert_w0(fit.tv_mean) / (r * fit.x);
  fit.c_max = boost::math::lambert_w0(fit.tv_max) / (r * fit.x);
  return fit;
}

}  // namespace remgibbs
