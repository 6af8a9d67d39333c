#include "phydsss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "phydsss/errors.hpp"

namespace phydsss::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("mean: empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.empty()) throw ValidationError("sample_variance: empty sample");
  if (xs.size() == 1) return 0.0;
  const double m = mean(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size() - 1);
}

double correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ValidationError("correlation: need two equal-length samples of size >= 2");
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) throw ValidationError("wilson_interval: zero trials");
  if (successes > trials) throw ValidationError("wilson_interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double binomial_sigma(double p, std::size_t trials) {
  if (trials == 0) throw ValidationError("binomial_sigma: zero trials");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double monobit_p_value(const BitString& bits) {
  if (bits.empty()) throw ValidationError("monobit_p_value: empty sequence");
  const double n = static_cast<double>(bits.size());
  const double s = 2.0 * static_cast<double>(bits.weight()) - n;
  return std::erfc(std::abs(s) / std::sqrt(2.0 * n));
}

double runs_p_value(const BitString& bits) {
  if (bits.size() < 2) throw ValidationError("runs_p_value: sequence too short");
  const double n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(bits.weight()) / n;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
  double runs = 1.0;
  for (std::size_t i = 1; i < bits.size(); ++i) runs += bits[i] != bits[i - 1];
  const double num = std::abs(runs - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return std::erfc(num / den);
}

double ks_statistic_exponential(std::span<const double> xs, double mean_value) {
  if (xs.empty()) throw ValidationError("ks_statistic_exponential: empty sample");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = 1.0 - std::exp(-sorted[i] / mean_value);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n));
  }
  return d;
}

double ks_critical_5pct(std::size_t n) { return 1.3581 / std::sqrt(static_cast<double>(n)); }

}  // namespace phydsss::stats
