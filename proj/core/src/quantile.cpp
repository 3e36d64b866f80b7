#include "remgibbs/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "remgibbs/errors.hpp"

namespace remgibbs {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kMillsSwitch = 20.0;
constexpr int kMillsDepth = 60;

double log_density(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

// phi(x) / (1 - Phi(x)).
double hazard(double x, double log_tail) {
  return std::exp(log_density(x) - log_tail);
}

double asymptotic_from_log(double minus_log_u) {
  const double root = std::sqrt(2.0 * minus_log_u);
  return root - (std::log(minus_log_u) + std::log(4.0 * std::numbers::pi)) / (2.0 * root);
}

double initial_guess(double log_u) {
  if (log_u < -3.0) return asymptotic_from_log(-log_u);
  // Lower tail: Phi(x) = 1 - u ~ -log u.
  if (log_u > -0.05) {
    const double lower = -std::log(-log_u);
    if (lower > 3.0) return -asymptotic_from_log(lower);
  }
  return 0.0;
}

double solve_log_tail(double log_u) {
  double lo = -40.0;
  double hi = 40.0;
  while (log_upper_tail(hi) > log_u) {
    lo = hi;
    hi *= 2.0;
  }
  double x = std::clamp(initial_guess(log_u), lo, hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double log_tail = log_upper_tail(x);
    const double f = log_tail - log_u;
    if (f == 0.0) return x;
    if (f > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    // f is decreasing with f'(x) = -hazard(x).
    double next = x + f / hazard(x, log_tail);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    if (hi - lo <= 4e-16 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double upper_tail(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double log_upper_tail(double x) {
  if (std::isnan(x)) throw DomainError("log_upper_tail: NaN argument");
  if (x < -1.0) return std::log1p(-0.5 * std::erfc(-x * kInvSqrt2));
  if (x <= kMillsSwitch) return std::log(0.5 * std::erfc(x * kInvSqrt2));
  // 1 - Phi(x) = phi(x) / (x + 1/(x + 2/(x + 3/(x + ...))))
  double denom = x;
  for (int k = kMillsDepth; k >= 1; --k) denom = x + k / denom;
  return log_density(x) - std::log(denom);
}

TailProbability TailProbability::from_probability(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError("tail probability must lie in (0,1), got " + std::to_string(u));
  }
  return TailProbability(std::log(u));
}

TailProbability TailProbability::from_log(double log_u) {
  if (!(log_u < 0.0) || !std::isfinite(log_u)) {
    throw DomainError("log tail probability must be finite and negative");
  }
  return TailProbability(log_u);
}

TailProbability TailProbability::beyond(double x) {
  return from_log(log_upper_tail(x));
}

double TailProbability::value() const { return std::exp(log_u_); }

double quantile_exact(TailProbability u) { return solve_log_tail(u.log_value()); }

double quantile_exact(double u) {
  if (!(u > 1e-300 && u < 1.0 - 1e-16)) {
    throw DomainError("quantile_exact: u must lie in (1e-300, 1 - 1e-16)");
  }
  return quantile_exact(TailProbability::from_probability(u));
}

double quantile_asymptotic(TailProbability u) {
  const double minus_log_u = -u.log_value();
  if (minus_log_u < std::numbers::e) {
    throw DomainError("quantile_asymptotic: requires u <= exp(-e)");
  }
  return asymptotic_from_log(minus_log_u);
}

double quantile_asymptotic(double u) {
  return quantile_asymptotic(TailProbability::from_probability(u));
}

}  // namespace remgibbs
