#pragma once

#include <span>
#include <string>
#include <vector>

namespace gedt {

struct TestResult {
  /// Two-sided p-value in [0, 1].
  double p = 1.0;
  /// Rank sum of the first sample (rank-sum) or W+ (signed-rank).
  double statistic = 0.0;
  /// "exact" or "normal".
  std::string method;
};

/// Ranks starting at 1; tied values share the mean of their ranks.
std::vector<double> midranks(std::span<const double> values);

/// Full permutation distribution of the rank sum of xs over all splits of the
/// pooled midranks. Any non-empty samples.
TestResult rank_sum_exact(std::span<const double> xs, std::span<const double> ys);

/// Normal approximation with tie-corrected variance and a 0.5 continuity
/// correction.
TestResult rank_sum_normal(std::span<const double> xs, std::span<const double> ys);

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test for independent samples.
/// Requires at least 5 observations per sample. Uses the exact distribution
/// when the pooled size is at most 12, or when there are no ties and both
/// samples have fewer than 50 observations; the normal approximation
/// otherwise.
TestResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys);

/// Two-sided Wilcoxon signed-rank test on the paired differences xs[i] - ys[i].
/// Zero differences are dropped. Exact for up to 25 non-zero pairs.
TestResult wilcoxon_signed_rank(std::span<const double> xs, std::span<const double> ys);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double stddev(std::span<const double> v);

}  // namespace gedt
