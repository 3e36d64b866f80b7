#include "remgibbs/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>
#include <utility>

#include "remgibbs/errors.hpp"
#include "remgibbs/order_stats.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

void check_width(int N) {
  if (N < 1 || N > kMaxSpinCount) throw DomainError("spin count N must lie in [1, 63]");
}

SimulatedGibbs attach_configs(int N, double beta, const DiscreteMeasure& values, Stream& rng) {
  std::vector<SpinConfig> configs = draw_configs(N, values.size(), rng);
  std::vector<std::uint64_t> labels(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) labels[i] = configs[i].bits;
  return SimulatedGibbs{N, beta, std::move(configs),
                        DiscreteMeasure::from_probabilities(std::move(labels), values.weights())};
}

}  // namespace

std::vector<SpinConfig> draw_configs(int N, std::size_t k, Stream& rng) {
  check_width(N);
  const std::uint64_t space = std::uint64_t{1} << N;
  if (k > space) throw DomainError("draw_configs: k exceeds 2^N");
  std::vector<SpinConfig> out;
  out.reserve(k);
  if (space <= 4 * static_cast<std::uint64_t>(k)) {
    // Small space: partial Fisher-Yates over all words.
    std::vector<std::uint64_t> words(space);
    std::iota(words.begin(), words.end(), std::uint64_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::uint64_t> pick(i, space - 1);
      std::swap(words[i], words[pick(rng)]);
      out.push_back({words[i]});
    }
    return out;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, space - 1);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * k);
  while (out.size() < k) {
    const std::uint64_t w = pick(rng);
    if (seen.insert(w).second) out.push_back({w});
  }
  return out;
}

SimulatedGibbs simulate_v1(int N, double beta, std::size_t k, Stream& rng) {
  check_width(N);
  const OrderStatSample sample = topk_uniform(std::uint64_t{1} << N, k, rng);
  return attach_configs(N, beta, mu1_from_uniforms(sample, N, beta, k), rng);
}

SimulatedGibbs simulate_v2(int N, double beta, std::size_t k, Stream& rng, Mu2Weights weights) {
  check_width(N);
  if (k < 1) throw DomainError("simulate_v2: k must be at least 1");
  std::vector<double> u(k);
  for (double& x : u) x = rng.uniform();
  return testing::simulate_v2_from_uniforms(N, beta, u, rng, weights);
}

namespace testing {
SimulatedGibbs simulate_v2_from_uniforms(int N, double beta, std::span<const double> uniforms,
                                         Stream& rng, Mu2Weights weights) {
  check_width(N);
  std::vector<double> w(uniforms.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(uniforms[i] > 0.0 && uniforms[i] <= 1.0)) {
      throw DomainError("simulate_v2: uniforms must lie in (0, 1]");
    }
    w[i] = -std::log(uniforms[i]);
  }
  const ExponentialLadder ladder = ExponentialLadder::from_draws(std::move(w));
  return attach_configs(N, beta, mu2(ladder, beta, ladder.size(), weights), rng);
}
}  // namespace testing

std::array<BoundReport, 2> lemma32_check(int n, int k, std::size_t trials,
                                         const ReplicaOptions& options) {
  if (n < 1 || n > 8) throw DomainError("lemma32_check: n must lie in [1, 8]");
  if (k < 0 || k > n) throw DomainError("lemma32_check: need 0 <= k <= n");
  if (trials < 1) throw DomainError("lemma32_check: need at least one trial");
  double target = 1.0;
  for (int i = n - k + 1; i <= n; ++i) target /= i;
  const double threshold = static_cast<double>(k) / (n + 1.0);

  struct Trial {
    char ranks = 0;
    char below = 0;
  };
  auto results = run_replicas(trials, options, [&](std::size_t, Stream& rng) {
    std::array<double, 8> u{};
    std::array<int, 8> order{};
    for (int i = 0; i < n; ++i) {
      u[i] = rng.uniform();
      order[i] = i;
    }
    std::sort(order.begin(), order.begin() + n, [&](int a, int b) { return u[a] < u[b]; });
    Trial t;
    t.ranks = 1;
    for (int i = 0; i < k; ++i) {
      if (order[i] != i) t.ranks = 0;
    }
    t.below = k == 0 || u[order[k - 1]] <= threshold;
    return t;
  });

  std::size_t hits_b = 0;
  std::size_t hits_a = 0;
  std::size_t hits_ab = 0;
  for (const Trial& t : results) {
    hits_b += t.ranks;
    hits_a += t.below;
    hits_ab += t.ranks && t.below;
  }
  const double dt = static_cast<double>(trials);
  const double pb = static_cast<double>(hits_b) / dt;
  const double pa = static_cast<double>(hits_a) / dt;
  const double pab = static_cast<double>(hits_ab) / dt;
  const std::vector<std::pair<std::string, double>> params{
      {"n", double(n)}, {"k", double(k)}, {"trials", dt}, {"target", target}};
  return {make_report("lemma32_rank_probability", std::abs(pb - target),
                      std::sqrt(target * (1.0 - target) / dt), 0.0, params),
          make_report("lemma32_factorization", std::abs(pab - pa * pb),
                      std::sqrt(pa * (1.0 - pa) * pb * (1.0 - pb) / dt), 0.0, params)};
}

MeasureSummary summarize(const DiscreteMeasure& mu) {
  const auto& w = mu.weights();
  MeasureSummary s;
  s.w_max = *std::max_element(w.begin(), w.end());
  std::vector<double> squares(w.size());
  std::vector<double> entropy_terms(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    squares[i] = w[i] * w[i];
    entropy_terms[i] = w[i] > 0.0 ? -w[i] * std::log(w[i]) : 0.0;
  }
  s.participation = compensated_sum(squares);
  s.entropy = std::max(0.0, compensated_sum(entropy_terms));
  // Top-m mass: the m largest weights, whatever the storage order.
  std::vector<double> sorted(std::min<std::size_t>(10, w.size()));
  std::partial_sort_copy(w.begin(), w.end(), sorted.begin(), sorted.end(), std::greater<>());
  auto top = [&](std::size_t m) {
    return compensated_sum(std::span<const double>(sorted.data(), std::min(m, sorted.size())));
  };
  s.top1 = top(1);
  s.top2 = top(2);
  s.top5 = top(5);
  s.top10 = top(10);
  return s;
}

MeasureSummary summarize(const SimulatedGibbs& g) { return summarize(g.measure); }

}  // namespace remgibbs
