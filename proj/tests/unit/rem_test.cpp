#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "remgibbs/errors.hpp"
#include "remgibbs/rem.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

constexpr double kBetaC = 1.1774100225154746910;

TEST(BetaC, Value) { EXPECT_NEAR(beta_c(), kBetaC, 1e-15); }

TEST(SampleEnergies, SizeGuard) {
  Stream rng(1);
  EXPECT_THROW(sample_energies(0, rng), ResourceError);
  EXPECT_THROW(sample_energies(26, rng), ResourceError);
}

TEST(SampleEnergies, TwoValuesSorted) {
  Stream rng(2);
  const auto s = sample_energies(1, rng);
  ASSERT_EQ(s.x.size(), 2u);
  EXPECT_LE(s.order_stat(1), s.order_stat(2));
}

TEST(SampleEnergies, SortIndexIsAscendingPermutation) {
  Stream rng(3);
  const auto s = sample_energies(16, rng);
  std::vector<std::uint32_t> idx = s.sorted_idx;
  std::sort(idx.begin(), idx.end());
  for (std::uint32_t i = 0; i < idx.size(); ++i) ASSERT_EQ(idx[i], i);
  for (std::size_t j = 2; j <= s.x.size(); ++j) ASSERT_LE(s.order_stat(j - 1), s.order_stat(j));
}

TEST(SampleEnergies, MeanAndMinimum) {
  Stream rng(4);
  const auto s = sample_energies(20, rng);
  EXPECT_LE(std::abs(estimate_mean(s.x).mean), 3.0 / 1024.0);
  EXPECT_NEAR(s.order_stat(1), -std::sqrt(2.0 * 20.0 * std::log(2.0)), 1.0);
}

TEST(PartitionFunction, InfiniteTemperature) {
  Stream rng(5);
  const auto s = sample_energies(10, rng);
  EXPECT_NEAR(partition_function_log(s, 0.0), 10.0 * std::log(2.0), 1e-12);
}

TEST(PartitionFunction, EqualEnergies) {
  const auto s = energies_from_values({0.0, 0.0});
  for (double beta : {0.0, 0.5, 3.0, 100.0}) {
    EXPECT_NEAR(partition_function_log(s, beta), std::log(2.0), 1e-15);
  }
  EXPECT_THROW(partition_function_log(s, -1.0), DomainError);
}

TEST(PartitionFunction, NoOverflowAtLowTemperature) {
  Stream rng(6);
  const auto s = sample_energies(25, rng);
  const double beta = 50.0 * beta_c();
  const double logz = partition_function_log(s, beta);
  EXPECT_TRUE(std::isfinite(logz));
  EXPECT_GE(logz, -beta * std::sqrt(25.0) * s.order_stat(1) - 1e-9);
}

TEST(ExponentIdentity, HoldsForAllWidths) {
  for (int N = 1; N <= 64; ++N) {
    for (double r : {1.0, 2.0, 10.0}) {
      const double beta = r * beta_c();
      EXPECT_NEAR(gibbs_exponent(N, beta), gibbs_exponent_normalized(N, beta),
                  1e-12 * gibbs_exponent(N, beta))
          << N;
    }
  }
}

TEST(FreeEnergy, TwoEqualStates) {
  const auto s = energies_from_values({0.0, 0.0});
  for (double beta : {0.3, 1.0, 4.0}) EXPECT_NEAR(free_energy(s, beta), -std::log(2.0) / beta, 1e-15);
  EXPECT_THROW(free_energy(s, 0.0), DomainError);
}

TEST(FreeEnergy, LogPartitionConvexInBeta) {
  Stream rng(7);
  const auto s = sample_energies(14, rng);
  for (double b = 0.05; b < 6.0; b += 0.05) {
    const double h = 0.05;
    const double second = partition_function_log(s, b + h) - 2.0 * partition_function_log(s, b) +
                          partition_function_log(s, b - h);
    EXPECT_GE(second, -1e-9) << b;
  }
}

TEST(FreeEnergyLimit, PiecewiseValues) {
  EXPECT_DOUBLE_EQ(free_energy_limit(beta_c()), -beta_c());
  EXPECT_DOUBLE_EQ(free_energy_limit(2.0 * beta_c()), -beta_c());
  EXPECT_NEAR(free_energy_limit(beta_c()), -kBetaC, 1e-15);
  EXPECT_NEAR(free_energy_limit(beta_c() / 2.0), -1.4717625281443433638, 1e-14);
  EXPECT_NEAR(free_energy_limit(beta_c() * (1.0 - 1e-9)), -beta_c(), 1e-12);
  EXPECT_THROW(free_energy_limit(0.0), DomainError);
  EXPECT_THROW(free_energy_limit(-1.0), DomainError);
}

TEST(GibbsMeasure, InfiniteTemperatureIsUniform) {
  Stream rng(8);
  const auto s = sample_energies(8, rng);
  const auto mu = gibbs_measure(s, 0.0);
  for (double w : mu.weights()) EXPECT_DOUBLE_EQ(w, 1.0 / 256.0);
}

TEST(GibbsMeasure, TwoStates) {
  const double t = 0.8;
  const auto s = energies_from_values({0.0, t});
  for (double beta : {0.5, 1.0, 2.0 * beta_c()}) {
    const auto mu = gibbs_measure(s, beta);
    const double e = std::exp(-beta * t);
    EXPECT_NEAR(mu.weights()[0], 1.0 / (1.0 + e), 1e-15);
    EXPECT_NEAR(mu.weights()[1], e / (1.0 + e), 1e-15);
    EXPECT_EQ(mu.support()[0], 0u);
  }
}

TEST(GibbsMeasure, EqualEnergiesUniform) {
  const auto mu = gibbs_measure(energies_from_values({1.5, 1.5, 1.5, 1.5}), 7.0);
  for (double w : mu.weights()) EXPECT_DOUBLE_EQ(w, 0.25);
}

TEST(GibbsMeasure, MonotoneAndNormalized) {
  Stream rng(9);
  for (int N : {4, 12, 20}) {
    const auto s = sample_energies(N, rng);
    for (double r : {0.0, 0.5, 1.0, 2.0, 10.0, 50.0}) {
      const auto mu = gibbs_measure(s, r * beta_c());
      const auto& w = mu.weights();
      EXPECT_NEAR(compensated_sum(w), 1.0, 1e-12);
      for (std::size_t i = 1; i < w.size(); ++i) ASSERT_LE(w[i], w[i - 1]);
      EXPECT_EQ(mu.support()[0], s.sorted_idx[0]);
    }
  }
}

}  // namespace
}  // namespace remgibbs
