#include "remgibbs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "remgibbs/errors.hpp"
#include "remgibbs/order_stats.hpp"
#include "remgibbs/quantile.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

using Params = std::vector<std::pair<std::string, double>>;

BoundReport proportion_report(std::string name, const std::vector<char>& hits, double bound,
                              Params params) {
  std::size_t count = 0;
  for (char h : hits) count += h != 0;
  const MeanEstimate p = estimate_proportion(count, hits.size());
  params.emplace_back("replicas", static_cast<double>(hits.size()));
  return make_report(std::move(name), p.mean, p.se, bound, std::move(params));
}

void require_replicas(std::size_t replicas) {
  if (replicas == 0) throw DomainError("at least one replica is required");
}

double g_from_log(double log_u) { return quantile_exact(TailProbability::from_log(log_u)); }

}  // namespace

bool bound_rule(double empirical, double se, double bound) {
  return empirical <= bound + 3.0 * se;
}

BoundReport make_report(std::string name, double empirical, double se, double bound,
                        std::vector<std::pair<std::string, double>> params) {
  BoundReport r;
  r.name = std::move(name);
  r.empirical = empirical;
  r.se = se;
  r.bound = bound;
  r.holds = bound_rule(empirical, se, bound);
  r.params = std::move(params);
  return r;
}

RegimeParams regime(std::uint64_t n, double lambda, double alpha, double delta, double epsilon,
                    double gamma) {
  if (n < 3) throw DomainError("regime: n must be at least 3");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("regime: lambda must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("regime: alpha must lie in (0,1)");
  if (!(delta > 0.0)) throw DomainError("regime: delta must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("regime: epsilon must lie in (0,1)");
  if (!(gamma > 0.0)) throw DomainError("regime: gamma must be positive");
  const double dn = static_cast<double>(n);
  RegimeParams p;
  p.n = n;
  p.lambda = lambda;
  p.alpha = alpha;
  p.delta = delta;
  p.epsilon = epsilon;
  p.gamma = gamma;
  p.lambda_n = lambda * std::log(dn) / std::pow(dn, alpha);
  if (p.lambda_n >= 1.0) {
    throw RegimeError("regime: lambda_n = " + std::to_string(p.lambda_n) +
                      " >= 1; n is too small for this alpha");
  }
  p.lambda_tilde_n =
      p.lambda_n *
      (1.0 + 2.0 * std::sqrt(2.0 * (1.0 - p.lambda_n) / (lambda * std::pow(dn, (1.0 - alpha) / 2.0))));
  return p;
}

double lemma21_bound(double n, double delta) {
  if (!(delta > 0.0)) throw DomainError("lemma21: delta must be positive");
  if (!(n >= 3.0)) throw DomainError("lemma21: n must be at least 3");
  return 4.0 / std::pow(std::log(n), 1.0 + delta);
}

double lemma21_half_width(double n, double delta) {
  return 2.0 * (1.0 + delta) * std::log(std::log(n));
}

bool lemma21_event(double log_u1, double n, double delta) {
  return std::abs(-log_u1 - std::log(n)) <= lemma21_half_width(n, delta);
}

BoundReport lemma21_check(std::uint64_t n, double delta, std::size_t replicas,
                          const ReplicaOptions& options) {
  const double dn = static_cast<double>(n);
  const double bound = lemma21_bound(dn, delta);
  require_replicas(replicas);
  auto fails = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    const OrderStatSample s = topk_uniform(n, 1, rng);
    return !lemma21_event(std::log(s.u[0]), dn, delta);
  });
  return proportion_report("lemma21", fails, bound, {{"n", dn}, {"delta", delta}});
}

double ladder_deviation_bound(double n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("ladder_deviation: eps must lie in (0,1)");
  if (!(n >= 1.0)) throw DomainError("ladder_deviation: n must be at least 1");
  return 2.0 * std::exp(-n * eps * eps / 4.0);
}

BoundReport ladder_deviation_check(std::uint64_t n, double eps, std::size_t replicas,
                                   const ReplicaOptions& options) {
  const double dn = static_cast<double>(n);
  const double bound = ladder_deviation_bound(dn, eps);
  require_replicas(replicas);
  auto fails = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    // S_n is a sum of n unit exponentials, i.e. Gamma(n).
    const double s = gamma_large_shape(dn, rng);
    return std::abs(s / dn - 1.0) >= eps;
  });
  return proportion_report("ladder_deviation", fails, bound, {{"n", dn}, {"eps", eps}});
}

double lemma22_bound(double x, double t, std::size_t j0) {
  if (!(x > 0.0)) throw DomainError("lemma22: x must be positive");
  if (!(t > 0.0)) throw DomainError("lemma22: t must be positive");
  if (j0 == 0) throw DomainError("lemma22: j0 must be positive");
  const double j = static_cast<double>(j0);
  if (t * t / (j * j) > 0.75) throw DomainError("lemma22: requires t^2 / j0^2 <= 3/4");
  return std::exp(-t * x + (t * t / j) * (1.0 + 2.0 * t * t / (j * j)) * (1.0 + 1.0 / j));
}

double inverse_square_tail(std::size_t z) {
  if (z == 0) throw DomainError("inverse_square_tail: z must be positive");
  if (z < 64) {
    double partial = 0.0;
    for (std::size_t l = z - 1; l >= 1; --l) partial += 1.0 / (static_cast<double>(l) * l);
    return std::numbers::pi * std::numbers::pi / 6.0 - partial;
  }
  const double x = static_cast<double>(z);
  const double x2 = x * x;
  return 1.0 / x + 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x);
}

double centered_harmonic_tail(std::size_t j0, Stream& rng, std::size_t explicit_terms) {
  if (j0 == 0) throw DomainError("centered_harmonic_tail: j0 must be positive");
  double sum = 0.0;
  for (std::size_t l = j0; l < j0 + explicit_terms; ++l) {
    sum += (rng.exponential() - 1.0) / static_cast<double>(l);
  }
  return sum + std::sqrt(inverse_square_tail(j0 + explicit_terms)) * rng.normal();
}

BoundReport lemma22_check(double x, double t, std::size_t j0, std::size_t replicas,
                          const ReplicaOptions& options) {
  const double bound = lemma22_bound(x, t, j0);
  require_replicas(replicas);
  auto hits = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    return centered_harmonic_tail(j0, rng) >= x;
  });
  return proportion_report("lemma22", hits, bound,
                           {{"x", x}, {"t", t}, {"j0", static_cast<double>(j0)}});
}

double z_tail_bound(double x) {
  if (!(x > 0.0)) throw DomainError("z_tail: x must be positive");
  return std::exp(-x * std::sqrt(3.0) / 2.0 + 15.0 / 4.0);
}

std::array<BoundReport, 2> z_tail_check(double x, std::size_t replicas,
                                        const ReplicaOptions& options) {
  const double bound = z_tail_bound(x);
  require_replicas(replicas);
  auto z = run_replicas(replicas, options,
                        [&](std::size_t, Stream& rng) { return centered_harmonic_tail(1, rng); });
  std::vector<char> upper(z.size());
  std::vector<char> lower(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    upper[i] = z[i] >= x;
    lower[i] = z[i] <= -x;
  }
  return {proportion_report("z_tail_upper", upper, bound, {{"x", x}}),
          proportion_report("z_tail_lower", lower, bound, {{"x", x}})};
}

double bernstein_bound(std::span<const double> variances, double t) {
  const double d = compensated_sum(variances);
  if (!(t > 0.0) || !(t < std::sqrt(d))) {
    throw DomainError("bernstein: requires 0 < t < sqrt(D)");
  }
  return 2.0 * std::exp(-t * t / 2.0);
}

BoundReport bernstein_check(double p, std::uint64_t n, double t, std::size_t replicas,
                            const ReplicaOptions& options) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("bernstein_check: p must lie in (0,1)");
  const double var = p * (1.0 - p);
  const std::vector<double> variances(n, var);
  const double bound = bernstein_bound(variances, t);
  const double dn = static_cast<double>(n);
  const double threshold = t * std::sqrt(dn * var);
  require_replicas(replicas);
  auto hits = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    std::binomial_distribution<std::uint64_t> bin(n, p);
    return std::abs(static_cast<double>(bin(rng)) - dn * p) >= threshold;
  });
  return proportion_report("bernstein", hits, bound, {{"p", p}, {"n", dn}, {"t", t}});
}

double prop22_failure_bound(double n, double delta, double k_n) {
  return 4.0 * (1.0 / std::pow(std::log(n), 1.0 + delta) +
                std::exp(-k_n / 16.0) / (1.0 - std::exp(-1.0 / 16.0)));
}

double prop22_bulk_rhs(double n, double j, double eps) {
  const double ln = std::log(n);
  return 2.0 * ln * (1.0 - std::sqrt(1.0 - std::log(j) / ln)) * (1.0 - eps);
}

double prop22_far_rhs(double n, double eps, double lambda_n) {
  const double ln = std::log(n);
  return 2.0 * ln * std::sqrt(1.0 - eps) - quantile_exact(lambda_n) * std::sqrt(2.0 * ln);
}

double spacing_floor(double n, double alpha, double eps) {
  return 2.0 * (1.0 - std::sqrt(alpha)) * (1.0 - eps) * std::log(n);
}

Prop22Result prop22_check(const RegimeParams& params, std::size_t k_n, std::size_t replicas,
                          const ReplicaOptions& options, std::size_t cap) {
  require_replicas(replicas);
  const std::uint64_t n = params.n;
  const double dn = static_cast<double>(n);
  const double root = std::sqrt(2.0 * std::log(dn));
  const auto far_index = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::ceil(dn * params.lambda_tilde_n)));
  const std::size_t explicit_count =
      static_cast<std::size_t>(std::min<std::uint64_t>(far_index, cap));
  if (k_n < 2 || k_n > explicit_count) {
    throw DomainError("prop22_check: need 2 <= k_n <= min(n lambda_tilde_n, cap)");
  }
  const double far_rhs = prop22_far_rhs(dn, params.epsilon, params.lambda_n);
  std::vector<double> bulk_rhs(explicit_count + 1, 0.0);
  for (std::size_t j = k_n; j <= explicit_count; ++j) {
    bulk_rhs[j] = prop22_bulk_rhs(dn, static_cast<double>(j), params.epsilon);
  }

  struct Outcome {
    char violated = 0;
    char omega = 0;
  };
  auto outcomes = run_replicas(replicas, options, [&](std::size_t, Stream& rng) {
    std::vector<double> s(explicit_count + 1, 0.0);
    for (std::size_t j = 1; j <= explicit_count; ++j) s[j] = s[j - 1] + rng.exponential();
    double s_far = s[explicit_count];
    if (far_index > explicit_count) {
      s_far += gamma_large_shape(static_cast<double>(far_index - explicit_count), rng);
    }
    double s_n = s_far;
    if (n > far_index) s_n += gamma_large_shape(static_cast<double>(n - far_index), rng);
    const double last_gap = rng.exponential();
    const double log_total = std::log(s_n + last_gap);

    const double log_u1 = std::log(s[1]) - log_total;
    const double g1 = g_from_log(log_u1);
    bool violated = false;
    bool ladder_ok = true;
    for (std::size_t j = k_n; j <= explicit_count; ++j) {
      const double spacing = root * (g1 - g_from_log(std::log(s[j]) - log_total));
      if (spacing < bulk_rhs[j]) violated = true;
      if (!(std::abs(s[j] / static_cast<double>(j) - 1.0) < 0.5)) ladder_ok = false;
    }
    if (!(std::abs(s_far / static_cast<double>(far_index) - 1.0) < 0.5)) ladder_ok = false;
    const double far_spacing = root * (g1 - g_from_log(std::log(s_far) - log_total));
    if (!(far_spacing > far_rhs)) violated = true;
    // log U_n = log(S_n / (S_n + E)), kept accurate as U_n approaches 1.
    const double last_spacing = root * (g1 - g_from_log(-std::log1p(last_gap / s_n)));
    if (!(last_spacing > far_rhs)) violated = true;

    Outcome out;
    out.violated = violated;
    out.omega = ladder_ok && lemma21_event(log_u1, dn, params.delta);
    return out;
  });

  Prop22Result result;
  std::vector<char> violations(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    violations[i] = outcomes[i].violated;
    if (outcomes[i].omega) {
      ++result.omega_count;
      if (outcomes[i].violated) ++result.violations_on_omega;
    }
  }
  result.report = proportion_report(
      "prop22", violations, prop22_failure_bound(dn, params.delta, static_cast<double>(k_n)),
      {{"n", dn},
       {"k_n", static_cast<double>(k_n)},
       {"eps", params.epsilon},
       {"delta", params.delta},
       {"explicit", static_cast<double>(explicit_count)}});
  return result;
}

double refined_spacing_bound(double k_n, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw DomainError("refined_spacing: eta must lie in (0,1)");
  if (!(k_n > 1.0)) throw DomainError("refined_spacing: k_n must exceed 1");
  return 2.0 * std::exp(-(std::sqrt(3.0) / 2.0) * std::pow(std::log(k_n), eta));
}

BoundReport refined_spacing_check(std::uint64_t n, std::size_t k_n, double eta,
                                  std::size_t replicas, const ReplicaOptions& options,
                                  std::size_t window) {
  const double bound = refined_spacing_bound(static_cast<double>(k_n), eta);
  require_replicas(replicas);
  if (k_n < 3) throw DomainError("refined_spacing: k_n must be at least 3");
  const double dn = static_cast<double>(n);
  const double root = std::sqrt(2.0 * std::log(dn));
  const double top = std::min({static_cast<double>(k_n) * std::pow(dn, 0.1),
                               static_cast<double>(k_n + window), dn});
  const auto upper = static_cast<std::size_t>(std::floor(top));
  if (upper < k_n) throw DomainError("refined_spacing: empty index window");
  std::vector<double> rhs(upper + 1, 0.0);
  for (std::size_t j = k_n; j <= upper; ++j) {
    const double lj = std::log(static_cast<double>(j));
    rhs[j] = lj * (1.0 - 1.0 / std::pow(lj, 1.0 - eta));
  }
  auto hits = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    const OrderStatSample s = topk_uniform(n, upper, rng);
    const double g1 = g_from_log(std::log(s.u[0]));
    for (std::size_t j = k_n; j <= upper; ++j) {
      if (root * (g1 - g_from_log(std::log(s.u[j - 1]))) < rhs[j]) return 1;
    }
    return 0;
  });
  return proportion_report("refined_spacing", hits, bound,
                           {{"n", dn},
                            {"k_n", static_cast<double>(k_n)},
                            {"eta", eta},
                            {"j_max", static_cast<double>(upper)}});
}

double prop23_failure_bound(double n, double delta) {
  if (!(delta > 0.0)) throw DomainError("prop23: delta must be positive");
  return 6.0 / std::pow(std::log(n), 1.0 + delta);
}

BoundReport prop23_event_check(std::uint64_t n, std::size_t k_n, double delta, double gamma,
                               std::size_t replicas, const ReplicaOptions& options) {
  const double dn = static_cast<double>(n);
  const double bound = prop23_failure_bound(dn, delta);
  if (k_n < 1 || k_n > n) throw DomainError("prop23: need 1 <= k_n <= n");
  if (!(gamma > 0.0)) throw DomainError("prop23: gamma must be positive");
  require_replicas(replicas);
  const double k = static_cast<double>(k_n);
  auto fails = run_replicas(replicas, options, [&](std::size_t, Stream& rng) -> char {
    double s1 = 0.0;
    double sk = 0.0;
    for (std::size_t j = 1; j <= k_n; ++j) {
      sk += rng.exponential();
      if (j == 1) s1 = sk;
    }
    const double total = sk + gamma_large_shape(dn - k + 1.0, rng);
    const bool top_ok = sk / total <= (1.0 + gamma) * k / dn;
    const bool min_ok = lemma21_event(std::log(s1 / total), dn, delta);
    const bool ladder_ok = std::abs(sk / k - 1.0) < 0.5;
    return !(top_ok && min_ok && ladder_ok);
  });
  return proportion_report("prop23_event", fails, bound,
                           {{"n", dn}, {"k_n", k}, {"delta", delta}, {"gamma", gamma}});
}

}  // namespace remgibbs
