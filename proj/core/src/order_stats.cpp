#include "remgibbs/order_stats.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "remgibbs/errors.hpp"
#include "remgibbs/quantile.hpp"

namespace remgibbs {

ExponentialLadder::ExponentialLadder(std::vector<double> w)
    : w_(std::move(w)), s_(w_.size() + 1, 0.0), t_(w_.size() + 1, 0.0) {
  for (std::size_t i = 1; i <= w_.size(); ++i) {
    s_[i] = s_[i - 1] + w_[i - 1];
    t_[i] = t_[i - 1] + w_[i - 1] / static_cast<double>(i);
  }
}

ExponentialLadder ExponentialLadder::from_draws(std::vector<double> w) {
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw DomainError("ladder draws must be finite and nonnegative");
    }
  }
  return ExponentialLadder(std::move(w));
}

ExponentialLadder sample_ladder(std::size_t k, Stream& rng) {
  if (k == 0) throw DomainError("sample_ladder: k must be at least 1");
  std::vector<double> w(k);
  for (double& x : w) x = rng.exponential();
  return ExponentialLadder::from_draws(std::move(w));
}

namespace {

// log1p(t) - t + t^2/2 - t^3/3, accurate for tiny t.
double log1p_tail(double t) {
  if (std::abs(t) < 1e-2) {
    double sum = 0.0;
    double power = t * t * t;
    for (int k = 4; k <= 14; ++k) {
      power *= t;
      sum += ((k % 2 == 0) ? -power : power) / k;
    }
    return sum;
  }
  return std::log1p(t) - t + 0.5 * t * t - t * t * t / 3.0;
}

}  // namespace

double gamma_large_shape(double a, Stream& rng) {
  if (!(a >= 1.0) || !std::isfinite(a)) {
    throw DomainError("gamma_large_shape: shape must be >= 1, got " + std::to_string(a));
  }
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double z = rng.normal();
    const double t = c * z;
    if (t <= -1.0) continue;
    const double v = (1.0 + t) * (1.0 + t) * (1.0 + t);
    const double u = rng.uniform();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return d * v;
    // Equivalent to log u < z^2/2 + d(1 - v + log v), using d c^2 = 1/9.
    if (std::log(u) < 3.0 * d * log1p_tail(t)) return d * v;
  }
}

OrderStatSample topk_uniform(std::uint64_t n, std::size_t k, Stream& rng) {
  if (k < 1 || k > n) {
    throw DomainError("topk_uniform: need 1 <= k <= n");
  }
  OrderStatSample out;
  out.n = n;
  out.u.resize(k);
  std::vector<double> s(k);
  const double rest_shape = static_cast<double>(n - k) + 1.0;
  for (;;) {
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      acc += rng.exponential();
      s[i] = acc;
    }
    const double total = acc + gamma_large_shape(rest_shape, rng);
    bool strict = true;
    for (std::size_t i = 0; i < k; ++i) {
      out.u[i] = s[i] / total;
      if (i > 0 && !(out.u[i] > out.u[i - 1])) strict = false;
    }
    // Ties only appear through rounding; redraw to keep the sample strict.
    if (strict && out.u[k - 1] < 1.0) return out;
  }
}

double log_ratio_sum(const ExponentialLadder& ladder, std::size_t j) {
  if (j < 2 || j > ladder.size()) {
    throw DomainError("log_ratio_sum: index out of range");
  }
  return -ladder.weighted_sum(j - 1);
}

double gaussian_spacing(const OrderStatSample& sample, std::size_t j) {
  if (j < 2 || j > sample.k()) {
    throw DomainError("gaussian_spacing: index out of range");
  }
  const double g1 = quantile_exact(TailProbability::from_probability(sample.u[0]));
  const double gj = quantile_exact(TailProbability::from_probability(sample.u[j - 1]));
  return g1 - gj;
}

std::vector<double> malmquist_ratios(const OrderStatSample& sample) {
  std::vector<double> xi;
  if (sample.k() < 2) return xi;
  xi.reserve(sample.k() - 1);
  for (std::size_t i = 1; i < sample.k(); ++i) {
    xi.push_back(std::exp(static_cast<double>(i) * std::log(sample.u[i - 1] / sample.u[i])));
  }
  return xi;
}

ExponentialLadder malmquist_ladder(const OrderStatSample& sample) {
  std::vector<double> w;
  if (sample.k() >= 2) w.reserve(sample.k() - 1);
  for (std::size_t i = 1; i < sample.k(); ++i) {
    w.push_back(static_cast<double>(i) * std::log(sample.u[i] / sample.u[i - 1]));
  }
  return ExponentialLadder::from_draws(std::move(w));
}

}  // namespace remgibbs
