#include <cmath>

#include "doctest.h"
#include "phydsss/rng.hpp"
#include "phydsss/stats.hpp"

using namespace phydsss;

TEST_SUITE("stats") {
TEST_CASE("NIST SP 800-22 worked examples") {
  // section 2.1.8 and 2.3.8 examples
  CHECK(stats::monobit_p_value(BitString::from_string("1011010101")) == doctest::Approx(0.527089).epsilon(1e-5));
  CHECK(stats::runs_p_value(BitString::from_string("1001101011")) == doctest::Approx(0.147232).epsilon(1e-5));
}

TEST_CASE("Wilson interval") {
  const auto ci = stats::wilson_interval(5, 10);
  // (p + z^2/2n -+ z sqrt(p(1-p)/n + z^2/4n^2)) / (1 + z^2/n)
  const double z = 1.959963984540054, n = 10, p = 0.5;
  const double denom = 1 + z * z / n;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  const double centre = (p + z * z / (2 * n)) / denom;
  CHECK(ci.low == doctest::Approx(centre - half));
  CHECK(ci.high == doctest::Approx(centre + half));
  CHECK(ci.low == doctest::Approx(0.2366).epsilon(1e-3));
  const auto zero = stats::wilson_interval(0, 100);
  CHECK(zero.low == doctest::Approx(0.0));
  CHECK(zero.high > 0.0);
}

TEST_CASE("sample moments and correlation") {
  const double xs[] = {1, 2, 3, 4};
  const double ys[] = {2, 4, 6, 8};
  CHECK(stats::mean(xs) == doctest::Approx(2.5));
  CHECK(stats::sample_variance(xs) == doctest::Approx(5.0 / 3.0));
  CHECK(stats::correlation(xs, ys) == doctest::Approx(1.0));
}

TEST_CASE("KS statistic accepts exponential data and rejects uniform") {
  RngStream r(11);
  std::vector<double> e(20000), u(20000);
  for (auto& v : e) v = -std::log(1.0 - r.uniform());
  for (auto& v : u) v = 2.0 * r.uniform();
  CHECK(stats::ks_statistic_exponential(e) < stats::ks_critical_5pct(e.size()));
  CHECK(stats::ks_statistic_exponential(u) > stats::ks_critical_5pct(u.size()));
}
}
