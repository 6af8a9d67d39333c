#include <bit>
#include <cmath>

#include "doctest.h"
#include "phydsss/adversary.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/stats.hpp"

using namespace phydsss;
using namespace phydsss::adversary;
using dsss::PrimitivePolyBank;
using dsss::SpreadingCode;

namespace {

SpreadingCode walsh(std::size_t row, std::size_t L) {
  std::vector<std::int8_t> chips(L);
  for (std::size_t j = 0; j < L; ++j) chips[j] = (std::popcount(row & j) & 1) ? -1 : 1;
  return SpreadingCode(chips, {});
}

// chip-level SINR of x * C + J, despread against C, unit noise
double chip_sinr(const std::vector<SpreadingCode>& jam_codes, const SpreadingCode& legit, double gamma_eb,
                 std::size_t symbols, RngStream& r) {
  const std::size_t L = legit.length();
  double err = 0;
  for (std::size_t s = 0; s < symbols; ++s) {
    const int x = r.sign();
    const auto j = racs_waveform(jam_codes, gamma_eb, r);
    double acc = 0;
    for (std::size_t c = 0; c < L; ++c) acc += (x * legit[c] + j[c] + r.normal()) * legit[c];
    const double z = acc / L;
    err += (z - x) * (z - x);
  }
  return 1.0 / (err / symbols);
}

}  // namespace

TEST_SUITE("adversary") {
TEST_CASE("strategy names") {
  for (auto s : {JammerStrategy::broadband, JammerStrategy::racs, JammerStrategy::replay}) {
    CHECK(parse_strategy(strategy_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_strategy("smart"), ValidationError);
  JammerConfig bad;
  bad.gamma_eb = -1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("code set enumeration") {
  const auto bank = PrimitivePolyBank::default_bank();
  const auto one = racs_code_set(1, bank, 3, 1023);
  REQUIRE(one.size() == 1);
  const auto& p = bank.at(3);
  CHECK(one[0] == dsss::lfsr_generate(p, dsss::lfsr_seed_from(BitString::from_string("1"), 10), 1023));
  RngStream r(1);
  const auto w = racs_waveform(one, 4.0, r);
  const double sgn = w[0] / (2.0 * one[0][0]);
  CHECK(std::abs(sgn) == doctest::Approx(1.0));
  for (std::size_t j = 0; j < 1023; ++j) CHECK(w[j] == doctest::Approx(2.0 * sgn * one[0][j]));

  const auto five = racs_code_set(5, bank, 3, 1023);
  CHECK(five.size() == 31);
  for (std::size_t a = 0; a < five.size(); ++a) {
    for (std::size_t b = a + 1; b < five.size(); ++b) CHECK(!(five[a] == five[b]));
  }
  const auto sup = racs_superposition(5, p, 1023);
  CHECK(sup == code_superposition(five));
  CHECK_THROWS_AS(racs_code_set(0, bank, 0, 63), ValidationError);
  CHECK_THROWS_AS(racs_code_set(21, bank, 0, 63), ResourceError);
  CHECK_THROWS_AS(racs_superposition(5, p, 1023, 30), ResourceError);
}

TEST_CASE("the legitimate code is in the enumeration") {
  const auto bank = PrimitivePolyBank::default_bank();
  RngStream r(2);
  for (unsigned k = 1; k <= 8; ++k) {
    const auto codes = racs_code_set(k, bank, 7, 1023);
    BitString rs;
    do {
      rs = r.bits(k);
    } while (rs.all_zero());
    const auto legit = dsss::lfsr_generate(bank.at(7), dsss::lfsr_seed_from(rs, 10), 1023);
    std::size_t matches = 0;
    for (const auto& c : codes) matches += dsss::code_correlation(c, legit) == 1.0;
    CHECK(matches == 1);
    const double phi = effective_interference(codes, legit);
    CHECK(phi == doctest::Approx(effective_interference(code_superposition(codes), legit)));
    CHECK(interference_power_factor(codes, legit) == doctest::Approx(phi * phi));
    // full-period shifts: 1 - (S - 1)/L'
    CHECK(phi == doctest::Approx(1.0 - (std::pow(2.0, k) - 2.0) / 1023.0));
  }
}

TEST_CASE("waveform power") {
  const auto bank = PrimitivePolyBank::default_bank();
  RngStream r(3);
  for (unsigned k : {1u, 3u, 5u}) {
    const auto codes = racs_code_set(k, bank, 0, 1023);
    const double P = 2.0;
    double acc = 0;
    const std::size_t symbols = 10000;
    for (std::size_t s = 0; s < symbols; ++s) {
      for (double v : racs_waveform(codes, P, r)) acc += v * v;
    }
    const double measured = acc / (symbols * 1023.0);
    CHECK(measured == doctest::Approx(racs_expected_power(codes, P)).epsilon(0.05));
    CHECK(measured == doctest::Approx(P).epsilon(0.05));
  }
  const auto codes = racs_code_set(3, bank, 0, 1023);
  for (double v : racs_waveform(codes, 0.0, r)) CHECK(v == 0.0);
  for (double v : broadband_waveform(100, 0.0, r)) CHECK(v == 0.0);
  double acc = 0;
  for (double v : broadband_waveform(100000, 3.0, r)) acc += v * v;
  CHECK(acc / 100000 == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("orthogonal codes give no interference") {
  std::vector<SpreadingCode> others;
  for (std::size_t row = 1; row < 16; ++row) others.push_back(walsh(row, 64));
  const auto legit = walsh(0, 64);
  CHECK(effective_interference(others, legit) == 0.0);
  CHECK(effective_interference(std::vector<SpreadingCode>{legit}, legit) == 1.0);
}

TEST_CASE("excluding the legitimate code degrades SINR less") {
  const auto bank = PrimitivePolyBank::for_code_length(63);
  const auto all = racs_code_set(4, bank, 0, 63);
  const auto legit = all[5];
  std::vector<SpreadingCode> excluded;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (i != 5) excluded.push_back(all[i]);
  }
  RngStream r(4), r2(4);
  const double with = chip_sinr(all, legit, 10.0, 100000, r);
  const double without = chip_sinr(excluded, legit, 10.0, 100000, r2);
  CHECK(without > with);
}

TEST_CASE("replay") {
  ReplayJammer jam(2);
  CHECK(jam.waveform(1, 1.0).empty());
  jam.capture(std::vector<double>{1, 2});
  CHECK(jam.waveform(1, 1.0).empty());
  jam.capture(std::vector<double>{3, 4});
  jam.capture(std::vector<double>{5, 6});
  CHECK(jam.waveform(-1, 4.0) == std::vector<double>{-6, -8});
  CHECK_THROWS_AS(ReplayJammer(0), ValidationError);
  CHECK(replay_waveform(std::vector<double>{1, -1}, 1, 0.0) == std::vector<double>{0, 0});

  const std::size_t L = 1024;
  const auto bank = PrimitivePolyBank::for_code_length(L);
  RngStream r(5);
  SUBCASE("static code: replayed symbol correlates fully") {
    const auto code = dsss::make_code(bank, r.bits(128), r.bits(16), L);
    ReplayJammer j(1);
    std::vector<int> prev{r.sign()};
    j.capture(dsss::spread(prev, code));
    const auto w = j.waveform(1, 1.0);
    CHECK(std::abs(dsss::despread(w, code)[0]) == 1.0);
  }
  SUBCASE("refreshed codes: replay is nearly orthogonal") {
    ReplayJammer j(1);
    double sum = 0;
    const std::size_t symbols = 10000;
    for (std::size_t s = 0; s <= symbols; ++s) {
      const auto code = dsss::make_code(bank, r.bits(128), r.bits(16), L);
      if (s > 0) sum += std::abs(dsss::despread(j.waveform(r.sign(), 1.0), code)[0]);
      j.capture(dsss::spread(std::vector<int>{r.sign()}, code));
    }
    CHECK(sum / symbols <= 3.0 / std::sqrt(double(L)));
  }
}
}
