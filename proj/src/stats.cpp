#include "gedt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gedt {

namespace {

struct Pooled {
  std::vector<double> ranks;
  double tie_term = 0.0;  // sum of t^3 - t over tie groups
  bool has_ties = false;
};

Pooled pool(std::span<const double> xs, std::span<const double> ys)
{
  std::vector<double> all(xs.begin(), xs.end());
  all.insert(all.end(), ys.begin(), ys.end());
  Pooled p;
  p.ranks = midranks(all);

  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) {
      ++j;
    }
    const auto t = static_cast<double>(j - i);
    p.tie_term += t * t * t - t;
    p.has_ties = p.has_ties || j - i > 1;
    i = j;
  }
  return p;
}

// Midranks doubled are integers, so subset sums can be tabulated exactly.
// counts[k][s]: number of k-subsets of `doubled` with sum s.
std::vector<std::vector<double>> subset_sum_counts(const std::vector<long>& doubled, std::size_t k_max)
{
  const long total = std::accumulate(doubled.begin(), doubled.end(), 0L);
  std::vector<std::vector<double>> counts(k_max + 1, std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  counts[0][0] = 1.0;
  for (const long r : doubled) {
    for (std::size_t k = k_max; k >= 1; --k) {
      auto& row = counts[k];
      const auto& prev = counts[k - 1];
      for (long s = total; s >= r; --s) {
        row[static_cast<std::size_t>(s)] += prev[static_cast<std::size_t>(s - r)];
      }
    }
  }
  return counts;
}

double normal_two_sided(double z) { return std::min(1.0, std::erfc(z / std::sqrt(2.0))); }

void require_nonempty(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.empty() || ys.empty()) {
    throw std::invalid_argument("rank-sum test needs two non-empty samples");
  }
}

}  // namespace

std::vector<double> midranks(std::span<const double> values)
{
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) {
      ++j;
    }
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      ranks[order[k]] = r;
    }
    i = j;
  }
  return ranks;
}

TestResult rank_sum_exact(std::span<const double> xs, std::span<const double> ys)
{
  require_nonempty(xs, ys);
  const Pooled p = pool(xs, ys);
  const std::size_t n = xs.size();
  const std::size_t total_n = p.ranks.size();

  std::vector<long> doubled(total_n);
  for (std::size_t i = 0; i < total_n; ++i) {
    doubled[i] = std::lround(2.0 * p.ranks[i]);
  }
  const long w2 = std::accumulate(doubled.begin(), doubled.begin() + static_cast<long>(n), 0L);
  // 2 * mean rank sum = n (N + 1), an integer.
  const long mu2 = static_cast<long>(n * (total_n + 1));
  const long dev = std::labs(w2 - mu2);

  const auto counts = subset_sum_counts(doubled, n);
  const auto& row = counts[n];
  double extreme = 0.0;
  double all = 0.0;
  for (std::size_t s = 0; s < row.size(); ++s) {
    all += row[s];
    if (std::labs(static_cast<long>(s) - mu2) >= dev) {
      extreme += row[s];
    }
  }
  return {std::min(1.0, extreme / all), static_cast<double>(w2) / 2.0, "exact"};
}

TestResult rank_sum_normal(std::span<const double> xs, std::span<const double> ys)
{
  require_nonempty(xs, ys);
  const Pooled p = pool(xs, ys);
  const auto n = static_cast<double>(xs.size());
  const auto m = static_cast<double>(ys.size());
  const double big_n = n + m;
  const double w = std::accumulate(p.ranks.begin(), p.ranks.begin() + static_cast<long>(xs.size()), 0.0);
  const double mu = n * (big_n + 1.0) / 2.0;
  const double var = n * m / 12.0 * ((big_n + 1.0) - p.tie_term / (big_n * (big_n - 1.0)));
  if (!(var > 0.0)) {
    return {1.0, w, "normal"};
  }
  const double z = std::max(std::abs(w - mu) - 0.5, 0.0) / std::sqrt(var);
  return {normal_two_sided(z), w, "normal"};
}

TestResult wilcoxon_rank_sum(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.size() < 5 || ys.size() < 5) {
    throw std::invalid_argument("wilcoxon_rank_sum needs at least 5 observations per sample (got " +
                                std::to_string(xs.size()) + " and " + std::to_string(ys.size()) +
                                "); call rank_sum_exact directly for smaller samples");
  }
  const bool small = xs.size() + ys.size() <= 12;
  const bool tie_free_moderate = !pool(xs, ys).has_ties && xs.size() < 50 && ys.size() < 50;
  return small || tie_free_moderate ? rank_sum_exact(xs, ys) : rank_sum_normal(xs, ys);
}

TestResult wilcoxon_signed_rank(std::span<const double> xs, std::span<const double> ys)
{
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("wilcoxon_signed_rank needs paired samples of equal size");
  }
  std::vector<double> diffs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] != ys[i]) {
      diffs.push_back(xs[i] - ys[i]);
    }
  }
  if (diffs.empty()) {
    return {1.0, 0.0, "exact"};
  }
  std::vector<double> mags(diffs.size());
  std::transform(diffs.begin(), diffs.end(), mags.begin(), [](double d) { return std::abs(d); });
  const auto ranks = midranks(mags);
  double w_plus = 0.0;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0) {
      w_plus += ranks[i];
    }
  }
  const auto n = static_cast<double>(diffs.size());
  const double mu = n * (n + 1.0) / 4.0;

  if (diffs.size() <= 25) {
    // Every sign pattern is equally likely: enumerate subset sums of doubled ranks.
    std::vector<long> doubled(ranks.size());
    long total = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      doubled[i] = std::lround(2.0 * ranks[i]);
      total += doubled[i];
    }
    std::vector<double> counts(static_cast<std::size_t>(total) + 1, 0.0);
    counts[0] = 1.0;
    for (const long r : doubled) {
      for (long s = total; s >= r; --s) {
        counts[static_cast<std::size_t>(s)] += counts[static_cast<std::size_t>(s - r)];
      }
    }
    const long w2 = std::lround(2.0 * w_plus);
    const long dev = std::labs(2 * w2 - total);  // |2 W+ - total/2| scaled by 2
    double extreme = 0.0;
    double all = 0.0;
    for (std::size_t s = 0; s < counts.size(); ++s) {
      all += counts[s];
      if (std::labs(2 * static_cast<long>(s) - total) >= dev) {
        extreme += counts[s];
      }
    }
    return {std::min(1.0, extreme / all), w_plus, "exact"};
  }

  std::vector<double> sorted = mags;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) {
      ++j;
    }
    const auto t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  if (!(var > 0.0)) {
    return {1.0, w_plus, "normal"};
  }
  const double z = std::max(std::abs(w_plus - mu) - 0.5, 0.0) / std::sqrt(var);
  return {normal_two_sided(z), w_plus, "normal"};
}

double mean(std::span<const double> v)
{
  if (v.empty()) {
    return 0.0;
  }
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v)
{
  if (v.size() < 2) {
    return 0.0;
  }
  const double mu = mean(v);
  double ss = 0.0;
  for (const double x : v) {
    ss += (x - mu) * (x - mu);
  }
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace gedt
