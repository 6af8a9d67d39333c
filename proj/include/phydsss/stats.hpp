#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "phydsss/bits.hpp"

namespace phydsss::stats {

double mean(std::span<const double> xs);
/// Unbiased sample variance (n - 1 denominator); 0 for a single sample.
double sample_variance(std::span<const double> xs);
double correlation(std::span<const double> xs, std::span<const double> ys);

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for a binomial proportion; z = 1.96 gives 95 %.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

/// Standard deviation of a binomial proportion estimate at probability p.
double binomial_sigma(double p, std::size_t trials);

/// NIST SP 800-22 frequency (monobit) test p-value.
double monobit_p_value(const BitString& bits);
/// NIST SP 800-22 runs test p-value. Returns 0 when the monobit
/// prerequisite (|pi - 1/2| < 2/sqrt(n)) fails.
double runs_p_value(const BitString& bits);

/// Kolmogorov-Smirnov statistic of the sample against Exp(mean).
double ks_statistic_exponential(std::span<const double> xs, double mean = 1.0);
/// Asymptotic KS critical value at the 5 % level.
double ks_critical_5pct(std::size_t n);

}  // namespace phydsss::stats
