#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "remgibbs/rng.hpp"

namespace remgibbs {

/// Exponential draws W_1..W_k with partial sums S_m = W_1 + ... + W_m and
/// weighted sums T_j = W_1/1 + ... + W_j/j (S_0 = T_0 = 0).
class ExponentialLadder {
 public:
  /// Wraps given draws. Zero draws are accepted (useful for degenerate
  /// cases); negative or non-finite draws throw DomainError.
  static ExponentialLadder from_draws(std::vector<double> w);

  std::size_t size() const noexcept { return w_.size(); }
  const std::vector<double>& draws() const noexcept { return w_; }
  /// W_i, 1-based.
  double draw(std::size_t i) const { return w_.at(i - 1); }
  /// S_m for 0 <= m <= size().
  double partial_sum(std::size_t m) const { return s_.at(m); }
  /// T_j for 0 <= j <= size().
  double weighted_sum(std::size_t j) const { return t_.at(j); }

 private:
  explicit ExponentialLadder(std::vector<double> w);
  std::vector<double> w_;
  std::vector<double> s_;
  std::vector<double> t_;
};

/// k i.i.d. standard exponentials. Throws DomainError if k == 0.
ExponentialLadder sample_ladder(std::size_t k, Stream& rng);

/// One Gamma(a, 1) draw for a >= 1, including shapes near 2^63.
///
/// Marsaglia-Tsang squeeze/rejection. The acceptance test is rewritten in
/// terms of t = cZ so that it stays exact when d = a - 1/3 is astronomically
/// large and cZ is tiny.
double gamma_large_shape(double a, Stream& rng);

/// The k smallest of n uniforms on (0,1), ascending.
struct OrderStatSample {
  std::uint64_t n = 0;
  std::vector<double> u;

  std::size_t k() const noexcept { return u.size(); }
};

/// Draws (U_{1,n}, ..., U_{k,n}) as S_i / (S_k + Gamma(n + 1 - k)).
/// O(k) work independent of n. Requires 1 <= k <= n.
OrderStatSample topk_uniform(std::uint64_t n, std::size_t k, Stream& rng);

/// log(U_1 / U_j) in its exponential form -T_{j-1}. Requires 2 <= j <= size().
double log_ratio_sum(const ExponentialLadder& ladder, std::size_t j);

/// X_{j,n} - X_{1,n} realized as G(u_1) - G(u_j). Requires 2 <= j <= k.
double gaussian_spacing(const OrderStatSample& sample, std::size_t j);

/// xi_i = (u_i / u_{i+1})^i for i = 1..k-1; i.i.d. uniform.
std::vector<double> malmquist_ratios(const OrderStatSample& sample);

/// The exponential ladder carried by a sample: W_i = i log(u_{i+1}/u_i),
/// i = 1..k-1. These are i.i.d. Exp(1) and satisfy
/// log(u_1/u_j) = -T_{j-1} pathwise.
ExponentialLadder malmquist_ladder(const OrderStatSample& sample);

}  // namespace remgibbs
