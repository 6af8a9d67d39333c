#include <openssl/evp.h>

#include <array>
#include <vector>

#include "doctest.h"
#include "phydsss/errors.hpp"
#include "phydsss/rsg.hpp"

using namespace phydsss;
using namespace phydsss::rsg;

namespace {

// direct OpenSSL oracle, independent of the crypto wrappers
std::vector<std::uint8_t> ossl_sha256(const std::vector<std::uint8_t>& in) {
  std::vector<std::uint8_t> out(32);
  unsigned len = 0;
  EVP_Digest(in.data(), in.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

std::vector<std::uint8_t> ossl_sha256d(const std::vector<std::uint8_t>& in) { return ossl_sha256(ossl_sha256(in)); }

std::vector<std::uint8_t> ossl_aes(const std::vector<std::uint8_t>& key, const std::vector<std::uint8_t>& block) {
  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  EVP_EncryptInit_ex(ctx, EVP_aes_256_ecb(), nullptr, key.data(), nullptr);
  EVP_CIPHER_CTX_set_padding(ctx, 0);
  std::vector<std::uint8_t> out(32);
  int len = 0;
  EVP_EncryptUpdate(ctx, out.data(), &len, block.data(), 16);
  EVP_CIPHER_CTX_free(ctx);
  out.resize(16);
  return out;
}

std::vector<std::uint8_t> ctr(std::uint64_t purpose, std::uint64_t index) {
  std::vector<std::uint8_t> b(16);
  for (int i = 0; i < 8; ++i) {
    b[7 - i] = static_cast<std::uint8_t>(purpose >> (8 * i));
    b[15 - i] = static_cast<std::uint8_t>(index >> (8 * i));
  }
  return b;
}

std::vector<std::uint8_t> cat(std::vector<std::uint8_t> a, const std::vector<std::uint8_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<std::uint8_t> kEvent(32, 0xAB);

}  // namespace

TEST_SUITE("rsg") {
TEST_CASE("counter block layout") {
  const auto b = counter_block(BlockPurpose::poly, 0x0102);
  CHECK(std::vector<std::uint8_t>(b.begin(), b.end()) == ctr(1, 0x0102));
}

TEST_CASE("feeding routes by source id and chains SHA-256") {
  SeedGenerator g(12, 128);
  CHECK(g.pool_feed(0, kEvent, 0) == 0);
  CHECK(std::vector<std::uint8_t>(g.state().pools[0].begin(), g.state().pools[0].end()) ==
        ossl_sha256(cat(std::vector<std::uint8_t>(32, 0), kEvent)));
  CHECK(g.pool_feed(13, kEvent, 5) == 1);
  CHECK(g.state().pool_fill_bits[1] == doctest::Approx(5));
  CHECK(g.state().pools[2] == SeedGenerator::empty_pool());
  CHECK_THROWS_AS(g.pool_feed(0, std::span<const std::uint8_t>{}, 1), ValidationError);
}

TEST_CASE("first reseed and generate match the oracle") {
  SeedGenerator g(12, 128);
  g.pool_feed(0, kEvent, 128);
  REQUIRE(g.reseed_ready());
  const auto p0 = ossl_sha256(cat(std::vector<std::uint8_t>(32, 0), kEvent));
  CHECK(g.reseed() == std::vector<std::size_t>{0});
  CHECK(g.state().reseed_count == 1);
  CHECK(g.state().pools[0] == SeedGenerator::empty_pool());
  CHECK(g.state().pool_fill_bits[0] == 0.0);
  const auto r1 = ossl_sha256d(cat(std::vector<std::uint8_t>(32, 0), ossl_sha256d(p0)));
  CHECK(std::vector<std::uint8_t>(g.state().key.begin(), g.state().key.end()) == r1);

  const auto out = g.generate(256);
  const auto s = cat(ossl_aes(r1, ctr(0, 1)), ossl_aes(r1, ctr(0, 2)));
  CHECK(out.seed.to_bytes() == s);
  CHECK(out.poly_select.to_bytes() == ossl_aes(r1, ctr(1, 1)));
  const auto next = cat(ossl_aes(r1, ctr(2, 1)), ossl_aes(r1, ctr(2, 2)));
  CHECK(std::vector<std::uint8_t>(g.state().key.begin(), g.state().key.end()) == next);

  const auto short_seed = SeedGenerator(12, 0).next_seed_pair(10);
  CHECK(short_seed.seed.size() == 10);
}

TEST_CASE("pool inclusion schedule") {
  SeedGenerator g(12, 1);
  for (std::uint64_t c = 1; c <= 4096; ++c) {
    for (std::size_t i = 0; i < 12; ++i) g.pool_feed(i, kEvent, 1);
    const auto inc = g.reseed();
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < 12 && c % (1ull << i) == 0; ++i) want.push_back(i);
    REQUIRE(inc == want);
  }
}

TEST_CASE("reseed refusal and unseeded generate") {
  SeedGenerator g(12, 128);
  CHECK_THROWS_AS(g.generate(64), NotSeeded);
  g.pool_feed(0, kEvent, 127.5);
  CHECK_FALSE(g.reseed_ready());
  CHECK_THROWS_AS(g.reseed(), ReseedRefused);
  CHECK_THROWS_AS(g.next_seed_pair(64), ReseedRefused);
  g.pool_feed(0, kEvent, 0.5);
  CHECK(g.reseed_ready());
  CHECK_NOTHROW(g.next_seed_pair(64));
  CHECK_THROWS_AS(g.generate(0), ValidationError);
}

TEST_CASE("transcript") {
  SeedGenerator g(12, 128);
  std::vector<std::string> log;
  g.set_transcript(&log);
  g.pool_feed(0, kEvent, 128);
  g.reseed();
  g.generate(64);
  REQUIRE(log.size() == 3);
  CHECK(log[0] == "FEED 0 " + to_hex(ossl_sha256(kEvent)));
  CHECK(log[1] == "RESEED 1 0");
  CHECK(log[2] == "GEN 64");
}

TEST_CASE("forward secrecy: successive outputs differ and the key rotates") {
  SeedGenerator g(12, 128);
  g.pool_feed(0, kEvent, 128);
  g.reseed();
  const auto k0 = g.state().key;
  const auto a = g.generate(256);
  const auto k1 = g.state().key;
  const auto b = g.generate(256);
  CHECK(k0 != k1);
  CHECK(a.seed != b.seed);
  // the previous block is not reproducible from the current key
  const auto from_k1 = ossl_aes(std::vector<std::uint8_t>(k1.begin(), k1.end()), ctr(0, 1));
  CHECK(a.seed.to_bytes() != cat(from_k1, ossl_aes(std::vector<std::uint8_t>(k1.begin(), k1.end()), ctr(0, 2))));
  CHECK(b.seed.to_bytes() == cat(from_k1, ossl_aes(std::vector<std::uint8_t>(k1.begin(), k1.end()), ctr(0, 2))));
}

TEST_CASE("determinism") {
  auto run = [] {
    SeedGenerator g(12, 128);
    std::vector<BitString> out;
    for (int i = 0; i < 20; ++i) {
      g.pool_feed(i, std::vector<std::uint8_t>(8, static_cast<std::uint8_t>(i)), 64);
      g.pool_feed(0, std::vector<std::uint8_t>(8, static_cast<std::uint8_t>(i)), 128);
      out.push_back(g.next_seed_pair(100).seed);
    }
    return out;
  };
  CHECK(run() == run());
  CHECK_THROWS_AS(SeedGenerator(0, 128), ValidationError);
}
}
