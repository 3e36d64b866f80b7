#pragma once

namespace remgibbs {

/// Standard Gaussian distribution function Phi.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), evaluated without cancellation for large x.
double upper_tail(double x);

/// log(1 - Phi(x)). Accurate for all finite x: uses the complementary error
/// function in the bulk and the Mills-ratio continued fraction for x > 20,
/// where 1 - Phi(x) would otherwise head into the subnormal range.
double log_upper_tail(double x);

/// An upper-tail probability u in (0, 1), stored as log(u).
///
/// The log form keeps full relative precision at both ends: near 0 (where
/// u may be far below DBL_MIN) and near 1 (where log u ~ -(1 - u)).
class TailProbability {
 public:
  /// Throws DomainError unless 0 < u < 1.
  static TailProbability from_probability(double u);
  /// Throws DomainError unless log_u is finite and negative.
  static TailProbability from_log(double log_u);
  /// The exact upper-tail mass beyond x.
  static TailProbability beyond(double x);

  double value() const;
  double log_value() const noexcept { return log_u_; }

 private:
  explicit TailProbability(double log_u) noexcept : log_u_(log_u) {}
  double log_u_;
};

/// G(u): the x with 1 - Phi(x) = u. Strictly decreasing in u.
///
/// Safeguarded Newton iteration on log(1 - Phi(x)) inside a bisection
/// bracket. The relative tail residual |1 - Phi(G(u)) - u| / u is below 1e-12.
double quantile_exact(TailProbability u);

/// Same as above for a plain probability; requires 1e-300 < u < 1 - 1e-16.
double quantile_exact(double u);

/// The two leading terms of the small-u expansion of G,
///   sqrt(2L) - (log L + log 4pi) / (2 sqrt(2L)),  L = log(1/u).
/// Requires u <= exp(-e) so that log log(1/u) > 0.
double quantile_asymptotic(TailProbability u);
double quantile_asymptotic(double u);

}  // namespace remgibbs
