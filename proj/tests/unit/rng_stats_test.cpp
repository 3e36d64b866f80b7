#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "remgibbs/parallel.hpp"
#include "remgibbs/rng.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

TEST(Stream, SubstreamsAreReproducibleAndDistinct) {
  Stream a = Stream::substream(42, 7);
  Stream b = Stream::substream(42, 7);
  Stream c = Stream::substream(42, 8);
  Stream d = Stream::substream(43, 7);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Stream, UniformOpenInterval) {
  Stream rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(rng.exponential(), 0.0);
  }
}

TEST(RunReplicas, IndependentOfWorkerCount) {
  auto draw = [](std::size_t r, Stream& rng) { return rng.normal() + static_cast<double>(r); };
  const auto one = run_replicas(1000, {99, 1}, draw);
  const auto four = run_replicas(1000, {99, 4}, draw);
  const auto many = run_replicas(1000, {99, 13}, draw);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, many);
}

TEST(RunReplicas, ZeroReplicas) {
  const auto out = run_replicas(0, {1, 4}, [](std::size_t, Stream&) { return 1; });
  EXPECT_TRUE(out.empty());
}

TEST(RunReplicas, PropagatesExceptions) {
  auto fail = [](std::size_t r, Stream&) {
    if (r == 500) throw std::runtime_error("boom");
    return 0;
  };
  EXPECT_THROW(run_replicas(1000, {1, 1}, fail), std::runtime_error);
  EXPECT_THROW(run_replicas(1000, {1, 3}, fail), std::runtime_error);
}

TEST(Stats, MeanAndProportion) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  const MeanEstimate m = estimate_mean(v);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.se, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_DOUBLE_EQ(sample_variance(v), 5.0 / 3.0);
  const MeanEstimate p = estimate_proportion(30, 100);
  EXPECT_DOUBLE_EQ(p.mean, 0.3);
  EXPECT_NEAR(p.se, std::sqrt(0.3 * 0.7 / 100.0), 1e-15);
}

TEST(Stats, CompensatedSum) {
  std::vector<double> v{1.0, 1e100, 1.0, -1e100};
  EXPECT_DOUBLE_EQ(compensated_sum(v), 2.0);
  std::vector<double> tenth(1000000, 0.1);
  EXPECT_NEAR(compensated_sum(tenth), 100000.0, 1e-9);
}

TEST(Stats, KsTwoSampleHandExample) {
  // sup |F_a - F_b| at x = 4: F_a = 1, F_b = 1/5.
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3, 4}, {2.5, 5, 6, 7, 8}), 0.8);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_DOUBLE_EQ(ks_statistic({1, 2}, {3, 4}), 1.0);
}

TEST(Stats, KsOneSample) {
  // Points at the midpoints of n equal cells: D = 1/(2n).
  std::vector<double> s;
  for (int i = 0; i < 10; ++i) s.push_back((i + 0.5) / 10.0);
  EXPECT_NEAR(ks_statistic(s, [](double x) { return x; }), 0.05, 1e-15);
}

TEST(Stats, KolmogorovSurvival) {
  // Reference values of the Kolmogorov distribution's survival function.
  EXPECT_NEAR(kolmogorov_survival(1.36), 0.049485876755377876, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(0.5), 0.9639452436648751, 1e-12);
  EXPECT_NEAR(kolmogorov_survival(2.0), 0.0006709252557796953, 1e-14);
  EXPECT_DOUBLE_EQ(kolmogorov_survival(0.0), 1.0);
}

TEST(Stats, KsPvalueMonotone) {
  EXPECT_GT(ks_pvalue(0.01, 1000), ks_pvalue(0.05, 1000));
  EXPECT_GT(ks_pvalue(0.05, 500, 500), ks_pvalue(0.1, 500, 500));
  EXPECT_LE(ks_pvalue(0.5, 1000, 1000), 1e-10);
}

TEST(Stats, Pearson) {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const std::vector<double> c{5, 4, 3, 2, 1};
  EXPECT_NEAR(pearson_correlation(a, b), 1.0, 1e-15);
  EXPECT_NEAR(pearson_correlation(a, c), -1.0, 1e-15);
}

}  // namespace
}  // namespace remgibbs
