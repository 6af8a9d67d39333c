#include "phydsss/rsg.hpp"

#include <algorithm>

#include "phydsss/errors.hpp"

namespace phydsss::rsg {

crypto::Block counter_block(BlockPurpose purpose, std::uint64_t index) {
  crypto::Block b{};
  const auto tag = static_cast<std::uint64_t>(purpose);
  for (int i = 0; i < 8; ++i) {
    b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(tag >> (56 - 8 * i));
    b[static_cast<std::size_t>(8 + i)] = static_cast<std::uint8_t>(index >> (56 - 8 * i));
  }
  return b;
}

crypto::Digest SeedGenerator::empty_pool() { return crypto::Digest{}; }

SeedGenerator::SeedGenerator(std::size_t pool_count, double min_pool_entropy)
    : min_pool_entropy_(min_pool_entropy) {
  if (pool_count == 0 || pool_count > 64) throw ValidationError("SeedGenerator: pool count must be in 1..64");
  if (!(min_pool_entropy >= 0.0)) throw ValidationError("SeedGenerator: entropy threshold must be >= 0");
  state_.pools.assign(pool_count, empty_pool());
  state_.pool_fill_bits.assign(pool_count, 0.0);
}

void SeedGenerator::log(std::string line) {
  if (transcript_) transcript_->push_back(std::move(line));
}

std::size_t SeedGenerator::pool_feed(std::size_t source_id, std::span<const std::uint8_t> event,
                                     double declared_entropy_bits) {
  if (event.empty()) throw ValidationError("pool_feed: empty event");
  if (!(declared_entropy_bits >= 0.0)) throw ValidationError("pool_feed: declared entropy must be >= 0");
  const std::size_t i = source_id % state_.pools.size();
  crypto::Sha256 h;
  h.update(state_.pools[i]);
  h.update(event);
  state_.pools[i] = h.finish();
  state_.pool_fill_bits[i] += declared_entropy_bits;
  if (transcript_) log("FEED " + std::to_string(i) + " " + to_hex(crypto::sha256(event)));
  return i;
}

bool SeedGenerator::reseed_ready() const noexcept { return state_.pool_fill_bits[0] >= min_pool_entropy_; }

std::vector<std::size_t> SeedGenerator::reseed() {
  if (!reseed_ready()) throw ReseedRefused("reseed: pool 0 has not accumulated enough entropy");
  ++state_.reseed_count;
  std::vector<std::uint8_t> material(state_.key.begin(), state_.key.end());
  std::vector<std::size_t> included;
  for (std::size_t i = 0; i < state_.pools.size(); ++i) {
    if (i < 64 && state_.reseed_count % (std::uint64_t{1} << i) != 0) break;
    const auto d = crypto::sha256d(state_.pools[i]);
    material.insert(material.end(), d.begin(), d.end());
    state_.pools[i] = empty_pool();
    state_.pool_fill_bits[i] = 0.0;
    included.push_back(i);
  }
  const auto r = crypto::sha256d(material);
  std::copy(r.begin(), r.end(), state_.key.begin());
  state_.seeded = true;
  if (transcript_) {
    std::string line = "RESEED " + std::to_string(state_.reseed_count);
    for (std::size_t i : included) line += " " + std::to_string(i);
    log(std::move(line));
  }
  return included;
}

SeedOutput SeedGenerator::generate(std::size_t seed_bits) {
  if (!state_.seeded) throw NotSeeded("generate: generator has never been reseeded");
  if (seed_bits == 0) throw ValidationError("generate: seed length must be positive");
  const crypto::Aes256 cipher(state_.key);
  SeedOutput out;
  const std::size_t blocks = (seed_bits + 127) / 128;
  for (std::size_t j = 1; j <= blocks; ++j) {
    out.seed.append(BitString::from_bytes(cipher.encrypt(counter_block(BlockPurpose::seed, j))));
  }
  out.seed.resize(seed_bits);
  out.poly_select = BitString::from_bytes(cipher.encrypt(counter_block(BlockPurpose::poly, 1)));

  const auto k1 = cipher.encrypt(counter_block(BlockPurpose::next_key, 1));
  const auto k2 = cipher.encrypt(counter_block(BlockPurpose::next_key, 2));
  std::copy(k1.begin(), k1.end(), state_.key.begin());
  std::copy(k2.begin(), k2.end(), state_.key.begin() + 16);
  log("GEN " + std::to_string(seed_bits));
  return out;
}

SeedOutput SeedGenerator::next_seed_pair(std::size_t seed_bits) {
  if (reseed_ready()) {
    reseed();
  } else if (!state_.seeded) {
    throw ReseedRefused("next_seed_pair: pools starved and generator never seeded");
  }
  return generate(seed_bits);
}

}  // namespace phydsss::rsg
