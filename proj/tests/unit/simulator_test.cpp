#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "remgibbs/errors.hpp"
#include "remgibbs/simulator.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs {
namespace {

double bc() { return beta_c(); }

TEST(DrawConfigs, TwoOfTwoOrders) {
  const auto first = run_replicas(10000, {1, 1}, [](std::size_t, Stream& r) {
    const auto c = draw_configs(1, 2, r);
    EXPECT_NE(c[0].bits, c[1].bits);
    return c[0].bits;
  });
  const auto zeros = static_cast<std::size_t>(std::count(first.begin(), first.end(), 0u));
  const MeanEstimate p = estimate_proportion(zeros, first.size());
  EXPECT_LE(std::abs(p.mean - 0.5), 3.0 * p.se);
}

TEST(DrawConfigs, DistinctAndInRange) {
  Stream rng(2);
  for (auto [N, k] : {std::pair{30, 1000}, std::pair{10, 1024}, std::pair{10, 300}, std::pair{63, 500}}) {
    const auto c = draw_configs(N, k, rng);
    ASSERT_EQ(c.size(), static_cast<std::size_t>(k));
    std::set<std::uint64_t> seen;
    for (const auto& s : c) {
      EXPECT_LT(s.bits, N == 63 ? ~std::uint64_t{0} : std::uint64_t{1} << N);
      seen.insert(s.bits);
    }
    EXPECT_EQ(seen.size(), c.size()) << N;
  }
}

TEST(DrawConfigs, FirstDrawBitsFair) {
  const auto words = run_replicas(100000, {3, 1}, [](std::size_t, Stream& r) {
    return draw_configs(8, 5, r)[0].bits;
  });
  for (int b = 0; b < 8; ++b) {
    const auto ones = static_cast<std::size_t>(
        std::count_if(words.begin(), words.end(), [b](std::uint64_t w) { return (w >> b) & 1u; }));
    const MeanEstimate p = estimate_proportion(ones, words.size());
    EXPECT_LE(std::abs(p.mean - 0.5), 3.0 * p.se) << "bit " << b;
  }
}

TEST(DrawConfigs, Errors) {
  Stream rng(4);
  EXPECT_THROW(draw_configs(3, 9, rng), DomainError);
  EXPECT_THROW(draw_configs(0, 1, rng), DomainError);
  EXPECT_THROW(draw_configs(64, 1, rng), DomainError);
}

TEST(SimulateV1, SingleTermPointMass) {
  Stream rng(5);
  const auto g = simulate_v1(20, 2.0 * bc(), 1, rng);
  ASSERT_EQ(g.configs.size(), 1u);
  EXPECT_EQ(g.measure.weights()[0], 1.0);
  EXPECT_EQ(g.measure.support()[0], g.configs[0].bits);
}

TEST(SimulateV1, WeightsNonincreasing) {
  Stream rng(6);
  for (int rep = 0; rep < 100; ++rep) {
    const auto g = simulate_v1(40, 2.0 * bc(), 64, rng);
    const auto& w = g.measure.weights();
    EXPECT_NEAR(compensated_sum(w), 1.0, 1e-12);
    for (std::size_t i = 1; i < w.size(); ++i) ASSERT_LE(w[i], w[i - 1]);
  }
}

TEST(SimulateV1, MatchesBruteForceTruncation) {
  const int N = 12;
  const double beta = 2.0 * bc();
  const std::size_t k = k_schedule(N, 1).k;
  const auto fast = run_replicas(5000, {7, 1}, [&](std::size_t, Stream& r) {
    return summarize(simulate_v1(N, beta, k, r)).w_max;
  });
  const auto slow = run_replicas(5000, {8, 1}, [&](std::size_t, Stream& r) {
    return summarize(mu1(sample_energies(N, r), beta, k)).w_max;
  });
  EXPECT_LE(ks_statistic(fast, slow), 0.05);
}

TEST(SimulateV1, TopkMatchesFullSortOfUniforms) {
  const int N = 12;
  const double beta = 2.0 * bc();
  const auto fast = run_replicas(5000, {9, 1}, [&](std::size_t, Stream& r) {
    return summarize(mu1_from_uniforms(topk_uniform(std::uint64_t{1} << N, 30, r), N, beta, 30))
        .participation;
  });
  const auto slow = run_replicas(5000, {10, 1}, [&](std::size_t, Stream& r) {
    std::vector<double> u(std::size_t{1} << N);
    for (double& v : u) v = r.uniform();
    std::partial_sort(u.begin(), u.begin() + 30, u.end());
    OrderStatSample s{u.size(), std::vector<double>(u.begin(), u.begin() + 30)};
    return summarize(mu1_from_uniforms(s, N, beta, 30)).participation;
  });
  EXPECT_LE(ks_statistic(fast, slow), 0.05);
}

TEST(SimulateV2, ForcedUnitUniformsGiveUniform) {
  Stream rng(11);
  const std::vector<double> ones(20, 1.0);
  const auto g = testing::simulate_v2_from_uniforms(30, 2.0 * bc(), ones, rng);
  for (double w : g.measure.weights()) EXPECT_NEAR(w, 0.05, 1e-15);
}

TEST(SimulateV2, FirstWeightIsMaximum) {
  Stream rng(12);
  for (int rep = 0; rep < 500; ++rep) {
    const auto g = simulate_v2(60, 2.0 * bc(), 100, rng);
    const auto& w = g.measure.weights();
    EXPECT_EQ(*std::max_element(w.begin(), w.end()), w[0]);
    EXPECT_NEAR(compensated_sum(w), 1.0, 1e-12);
    std::set<std::uint64_t> labels(g.measure.support().begin(), g.measure.support().end());
    EXPECT_EQ(labels.size(), w.size());
  }
}

TEST(SimulateV2, SameLawAsExplicitLadder) {
  const double beta = 2.0 * bc();
  const auto sim = run_replicas(50000, {13, 1}, [&](std::size_t, Stream& r) {
    return summarize(simulate_v2(20, beta, 45, r)).participation;
  });
  const auto direct = run_replicas(50000, {14, 1}, [&](std::size_t, Stream& r) {
    return summarize(mu2(sample_ladder(45, r), beta, 45)).participation;
  });
  EXPECT_LE(ks_statistic(sim, direct), 0.02);
}

TEST(SimulateV2, Errors) {
  Stream rng(15);
  EXPECT_THROW(simulate_v2(20, bc(), 10, rng), DomainError);
  EXPECT_THROW(simulate_v2(20, 2.0 * bc(), 0, rng), DomainError);
  const std::vector<double> bad{0.5, 0.0};
  EXPECT_THROW(testing::simulate_v2_from_uniforms(10, 2.0 * bc(), bad, rng), DomainError);
}

TEST(Lemma32, RankTupleProbabilities) {
  const auto a = lemma32_check(5, 2, 1000000, {16, 1});
  EXPECT_TRUE(a[0].holds) << a[0].empirical;
  EXPECT_TRUE(a[1].holds) << a[1].empirical;
  const auto b = lemma32_check(3, 3, 200000, {17, 1});
  EXPECT_TRUE(b[0].holds);
  EXPECT_NEAR(b[0].params[3].second, 1.0 / 6.0, 1e-15);
  const auto c = lemma32_check(4, 0, 1000, {18, 1});
  EXPECT_EQ(c[0].empirical, 0.0);
  EXPECT_NEAR(c[0].params[3].second, 1.0, 0.0);
  EXPECT_THROW(lemma32_check(9, 2, 10, {}), DomainError);
}

TEST(Summarize, Uniform) {
  const auto s = summarize(DiscreteMeasure::uniform(8));
  EXPECT_DOUBLE_EQ(s.w_max, 0.125);
  EXPECT_NEAR(s.participation, 0.125, 1e-15);
  EXPECT_NEAR(s.entropy, std::log(8.0), 1e-15);
  EXPECT_NEAR(s.top5, 0.625, 1e-15);
  EXPECT_NEAR(s.top10, 1.0, 1e-15);
}

TEST(Summarize, PointMass) {
  const auto s = summarize(DiscreteMeasure::point_mass(3));
  EXPECT_EQ(s.w_max, 1.0);
  EXPECT_EQ(s.participation, 1.0);
  EXPECT_EQ(s.top1, 1.0);
  EXPECT_EQ(s.entropy, 0.0);
}

TEST(Summarize, TwoState) {
  const auto s = summarize(DiscreteMeasure::from_probabilities({0, 1}, {0.3, 0.7}));
  EXPECT_NEAR(s.participation, 0.58, 1e-15);
  EXPECT_DOUBLE_EQ(s.top1, 0.7);
  EXPECT_DOUBLE_EQ(s.top2, 1.0);
}

}  // namespace
}  // namespace remgibbs
