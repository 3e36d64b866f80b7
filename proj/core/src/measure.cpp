#include "remgibbs/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "remgibbs/errors.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

constexpr double kNormTolerance = 1e-12;

void check_distinct(const std::vector<std::uint64_t>& support) {
  const std::uint64_t top = *std::max_element(support.begin(), support.end());
  if (top < 4 * static_cast<std::uint64_t>(support.size())) {
    std::vector<bool> hit(top + 1, false);
    for (auto s : support) {
      if (hit[s]) throw DomainError("measure support labels must be distinct");
      hit[s] = true;
    }
    return;
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(support.size());
  for (auto s : support) {
    if (!seen.insert(s).second) throw DomainError("measure support labels must be distinct");
  }
}

}  // namespace

std::vector<std::uint64_t> iota_support(std::size_t count) {
  std::vector<std::uint64_t> s(count);
  std::iota(s.begin(), s.end(), std::uint64_t{0});
  return s;
}

DiscreteMeasure DiscreteMeasure::from_log_weights(std::vector<std::uint64_t> support,
                                                  std::span<const double> log_weights) {
  if (support.size() != log_weights.size() || support.empty()) {
    throw DomainError("from_log_weights: support and weights must be nonempty and equal length");
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  if (!std::isfinite(top)) throw DomainError("from_log_weights: non-finite log weight");
  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i] - top);
  const double total = compensated_sum(w);
  for (double& x : w) x /= total;
  check_distinct(support);
  return DiscreteMeasure(std::move(support), std::move(w));
}

DiscreteMeasure DiscreteMeasure::from_probabilities(std::vector<std::uint64_t> support,
                                                    std::vector<double> weights) {
  if (support.size() != weights.size() || support.empty()) {
    throw DomainError("from_probabilities: support and weights must be nonempty and equal length");
  }
  for (double x : weights) {
    if (!(x >= 0.0)) throw DomainError("from_probabilities: negative or NaN weight");
  }
  if (std::abs(compensated_sum(weights) - 1.0) > kNormTolerance) {
    throw DomainError("from_probabilities: weights do not sum to 1");
  }
  check_distinct(support);
  return DiscreteMeasure(std::move(support), std::move(weights));
}

DiscreteMeasure DiscreteMeasure::point_mass(std::uint64_t label) {
  return DiscreteMeasure({label}, {1.0});
}

DiscreteMeasure DiscreteMeasure::uniform(std::size_t count) {
  if (count == 0) throw DomainError("uniform: empty support");
  return DiscreteMeasure(iota_support(count),
                         std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

double leading_mass(const DiscreteMeasure& mu, std::size_t m) {
  const std::size_t count = std::min(m, mu.size());
  return compensated_sum(std::span<const double>(mu.weights().data(), count));
}

double total_variation(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  const DiscreteMeasure& longer = mu.size() >= nu.size() ? mu : nu;
  const DiscreteMeasure& shorter = mu.size() >= nu.size() ? nu : mu;
  // Fast path: one support is a prefix of the other (truncations in energy order).
  if (std::equal(shorter.support().begin(), shorter.support().end(), longer.support().begin())) {
    std::vector<double> terms(longer.size());
    for (std::size_t i = 0; i < longer.size(); ++i) {
      const double other = i < shorter.size() ? shorter.weights()[i] : 0.0;
      terms[i] = std::abs(longer.weights()[i] - other);
    }
    return std::clamp(compensated_sum(terms), 0.0, 2.0);
  }
  std::unordered_map<std::uint64_t, double> diff;
  diff.reserve(mu.size() + nu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) diff[mu.support()[i]] += mu.weights()[i];
  for (std::size_t i = 0; i < nu.size(); ++i) diff[nu.support()[i]] -= nu.weights()[i];
  // Sum in label order so the result does not depend on hash iteration order.
  std::vector<std::pair<std::uint64_t, double>> entries(diff.begin(), diff.end());
  std::sort(entries.begin(), entries.end());
  std::vector<double> terms;
  terms.reserve(entries.size());
  for (const auto& [label, d] : entries) terms.push_back(std::abs(d));
  return std::clamp(compensated_sum(terms), 0.0, 2.0);
}

}  // namespace remgibbs
