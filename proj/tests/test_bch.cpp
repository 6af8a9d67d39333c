#include <algorithm>
#include <bit>
#include <sstream>

#include "doctest.h"
#include "phydsss/bch.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/rng.hpp"

using namespace phydsss;
using bch::BchCode;

namespace {

// word bit i <-> coefficient of x^(n-1-i); returns remainder of w(x) mod g(x)
std::uint32_t poly_mod(std::uint32_t w, std::uint32_t g) {
  const int dg = std::bit_width(g) - 1;
  for (int d = std::bit_width(w) - 1; d >= dg; --d) {
    if (w >> d & 1) w ^= g << (d - dg);
  }
  return w;
}

std::uint32_t to_poly(const BitString& b) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < b.size(); ++i) v = v << 1 | b[i];
  return v;
}

BitString flip(BitString b, std::initializer_list<std::size_t> pos) {
  for (auto p : pos) b.flip(p);
  return b;
}

}  // namespace

TEST_SUITE("bch") {
TEST_CASE("field polynomials are primitive") {
  for (unsigned m = 3; m <= 16; ++m) {
    const bch::GaloisField gf(m);
    CHECK(gf.order() == (1u << m) - 1);
    CHECK(gf.alpha_pow(gf.order()) == 1);
  }
  CHECK(bch::field_polynomial(4) == 0x13);
  CHECK(bch::field_polynomial(8) == 0x11D);
}

TEST_CASE("(15,7,2) generator and systematic encoding match textbook arithmetic") {
  const BchCode code(bch::kTestParams);
  // g(x) = x^8 + x^7 + x^6 + x^4 + 1 for x^4 + x + 1
  const std::uint32_t g = 0x1D1;
  std::vector<std::uint8_t> want{1, 0, 0, 0, 1, 0, 1, 1, 1};
  CHECK(code.generator() == want);
  RngStream r(1);
  for (int i = 0; i < 50; ++i) {
    const auto msg = r.bits(7);
    const auto cw = code.encode(msg);
    const std::uint32_t shifted = to_poly(msg) << 8;
    CHECK(to_poly(cw) == (shifted ^ poly_mod(shifted, g)));
    CHECK(code.message_of(cw) == msg);
  }
}

TEST_CASE("production generator degree") {
  const BchCode code(bch::kProductionParams);
  CHECK(code.generator().size() == 255 - 131 + 1);
}

TEST_CASE("encode basics") {
  const BchCode code(bch::kTestParams);
  CHECK(code.encode(BitString(7)).all_zero());
  RngStream r(2);
  const auto a = code.encode(r.bits(7));
  const auto b = code.encode(r.bits(7));
  CHECK(code.is_codeword(a ^ b));
  const auto d = code.decode(a);
  REQUIRE(d.ok());
  CHECK(*d.codeword == a);
  CHECK(d.corrections == 0);
  CHECK_THROWS_AS(code.encode(BitString(6)), ValidationError);
  CHECK_THROWS_AS(code.decode(BitString(14)), ValidationError);
  CHECK_THROWS_AS(BchCode({15, 8, 2}), ParameterError);
  CHECK_THROWS_AS(BchCode({16, 7, 2}), ParameterError);
}

TEST_CASE("(15,7,2) exhaustive correction and bounded-distance behaviour") {
  const BchCode code(bch::kTestParams);
  std::vector<BitString> all;
  for (std::uint64_t m = 0; m < 128; ++m) all.push_back(code.encode(BitString::from_uint(m, 7)));
  RngStream r(3);
  for (int rep = 0; rep < 6; ++rep) {
    const auto& cw = all[r.below(all.size())];
    for (std::uint32_t e = 1; e < (1u << 15); ++e) {
      const int w = std::popcount(e);
      if (w > 3) continue;
      auto rx = cw;
      for (int i = 0; i < 15; ++i) {
        if (e >> i & 1) rx.flip(i);
      }
      const auto d = code.decode(rx);
      if (w <= 2) {
        REQUIRE(d.ok());
        CHECK(*d.codeword == cw);
        CHECK(d.corrections == static_cast<std::size_t>(w));
        continue;
      }
      // nearest-codeword brute force
      std::size_t best = 99;
      for (const auto& c : all) best = std::min(best, hamming_distance(c, rx));
      if (d.ok()) {
        CHECK(*d.codeword != cw);
        CHECK(hamming_distance(*d.codeword, rx) <= 2);
        CHECK(hamming_distance(*d.codeword, rx) == best);
      } else {
        CHECK(best > 2);
      }
    }
  }
}

TEST_CASE("(255,131,18) randomized round trip") {
  const BchCode code(bch::kProductionParams);
  RngStream r(4);
  for (int i = 0; i < 10000; ++i) {
    const auto cw = code.random_codeword(r);
    auto rx = cw;
    const std::size_t w = r.below(19);
    std::vector<std::size_t> pos(255);
    for (std::size_t j = 0; j < 255; ++j) pos[j] = j;
    for (std::size_t j = 0; j < w; ++j) {
      std::swap(pos[j], pos[j + r.below(255 - j)]);
      rx.flip(pos[j]);
    }
    const auto d = code.decode(rx);
    REQUIRE(d.ok());
    CHECK(*d.codeword == cw);
    CHECK(d.corrections == w);
  }
}

TEST_CASE("syndrome zero iff divisible by the generator (n <= 63)") {
  const bch::BchParams params[] = {{15, 7, 2}, {15, 5, 3}, {31, 21, 2}, {31, 16, 3}, {63, 51, 2}, {63, 45, 3}, {63, 39, 4}};
  RngStream r(5);
  for (const auto& p : params) {
    const BchCode code(p);
    CHECK(code.generator().size() == p.n - p.k + 1);
    for (int i = 0; i < 400; ++i) {
      BitString w;
      switch (i % 3) {
        case 0: w = r.bits(p.n); break;
        case 1: w = code.random_codeword(r); break;
        default: w = flip(code.random_codeword(r), {static_cast<std::size_t>(r.below(p.n))}); break;
      }
      CHECK(code.is_codeword(w) == code.divisible_by_generator(w));
    }
  }
}

TEST_CASE("random codewords") {
  const BchCode code(bch::kTestParams);
  RngStream a(6), b(6);
  CHECK(code.random_codeword(a) == code.random_codeword(b));
  std::vector<int> ones(7, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    const auto cw = code.random_codeword(a);
    CHECK(code.is_codeword(cw));
    const auto m = code.message_of(cw);
    for (int j = 0; j < 7; ++j) ones[j] += m[j];
  }
  for (int j = 0; j < 7; ++j) CHECK(std::abs(ones[j] / double(draws) - 0.5) < 0.01);
}

TEST_CASE("conformance vectors round trip") {
  const BchCode code(bch::kProductionParams);
  RngStream r(7);
  const auto vecs = bch::make_conformance(code, 5, r);
  std::stringstream ss;
  bch::write_conformance(ss, vecs);
  const auto back = bch::read_conformance(ss);
  REQUIRE(back.size() == vecs.size());
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    CHECK(back[i].params == vecs[i].params);
    CHECK(back[i].message == vecs[i].message);
    CHECK(back[i].codeword == code.encode(back[i].message));
  }
}
}
