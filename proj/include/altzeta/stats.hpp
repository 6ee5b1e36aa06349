#pragma once

#include <functional>
#include <vector>

namespace altzeta::stats {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample statistic against a continuous CDF.
double ks_one_sample(std::vector<double> a, const std::function<double(double)>& cdf);

/// Asymptotic critical value c(alpha) sqrt((n+m)/(n m)); only alpha = 0.05,
/// 0.01 and 0.001 are tabulated. Pass m = 0 for the one-sample test.
double ks_critical(std::size_t n, std::size_t m, double alpha = 0.01);

double mean(const std::vector<double>& x);

/// Integrated autocorrelation time 1 + 2 sum rho_k, truncated by Sokal's
/// self-consistent window (c = 5).
double integrated_autocorr_time(const std::vector<double>& x);

}  // namespace altzeta::stats
