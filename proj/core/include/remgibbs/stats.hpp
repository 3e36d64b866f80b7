#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace remgibbs {

/// Sample mean with its Monte Carlo standard error.
struct MeanEstimate {
  double mean = 0.0;
  double se = 0.0;
  std::size_t count = 0;
};

MeanEstimate estimate_mean(std::span<const double> values);

/// Binomial proportion hits/n with SE sqrt(p(1-p)/n).
MeanEstimate estimate_proportion(std::size_t hits, std::size_t n);

double sample_variance(std::span<const double> values);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// One-sample statistic against a continuous CDF.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution, P[K > lambda].
double kolmogorov_survival(double lambda);

/// Asymptotic p-values with Stephens' small-sample correction.
double ks_pvalue(double statistic, std::size_t n);
double ks_pvalue(double statistic, std::size_t n, std::size_t m);

double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace remgibbs
