#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace remgibbs {

/// A probability vector over distinct configuration labels.
///
/// Weights are nonnegative and sum to 1 within 1e-12. Order is meaningful:
/// measures built from energies keep ascending-energy order.
class DiscreteMeasure {
 public:
  /// Normalizes exp(log_weights) with a max shift, so any finite inputs work.
  static DiscreteMeasure from_log_weights(std::vector<std::uint64_t> support,
                                          std::span<const double> log_weights);
  /// Validates an already normalized vector; throws DomainError otherwise.
  static DiscreteMeasure from_probabilities(std::vector<std::uint64_t> support,
                                            std::vector<double> weights);
  static DiscreteMeasure point_mass(std::uint64_t label);
  /// Uniform on labels 0..count-1.
  static DiscreteMeasure uniform(std::size_t count);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<std::uint64_t>& support() const noexcept { return support_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  DiscreteMeasure(std::vector<std::uint64_t> support, std::vector<double> weights)
      : support_(std::move(support)), weights_(std::move(weights)) {}
  std::vector<std::uint64_t> support_;
  std::vector<double> weights_;
};

/// Labels 0..count-1, the support shared by measures in energy order.
std::vector<std::uint64_t> iota_support(std::size_t count);

/// Mass of the first m entries (all of it if m >= size()).
double leading_mass(const DiscreteMeasure& mu, std::size_t m);

/// sum over the union of supports of |mu(s) - nu(s)|, in [0, 2].
double total_variation(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace remgibbs
