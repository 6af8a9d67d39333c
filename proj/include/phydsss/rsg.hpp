#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "phydsss/bits.hpp"
#include "phydsss/crypto.hpp"

namespace phydsss::rsg {

inline constexpr std::size_t kDefaultPoolCount = 12;
inline constexpr double kDefaultMinPoolEntropy = 128.0;
inline constexpr std::size_t kPolySelectBits = 128;

/// Reseed requested while pool 0 holds less than the entropy threshold.
class ReseedRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// generate() before any successful reseed.
class NotSeeded : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GeneratorState {
  std::vector<crypto::Digest> pools;   // P_0 .. P_U, 32 bytes each
  std::uint64_t reseed_count = 0;      // C_p
  crypto::Key256 key{};                // R
  std::vector<double> pool_fill_bits;  // declared entropy per pool
  bool seeded = false;
};

struct SeedOutput {
  BitString seed;         // R_s, s_l bits
  BitString poly_select;  // R_p, 128 bits
};

/// Counter block: 64-bit big-endian purpose tag || 64-bit big-endian index.
enum class BlockPurpose : std::uint64_t { seed = 0, poly = 1, next_key = 2 };
crypto::Block counter_block(BlockPurpose purpose, std::uint64_t index);

/// Fortuna-style seed generator. Pools are SHA-256 chains; a reseed
/// increments C_p, then hashes SHA-256d of every pool P_i with 2^i | C_p
/// into R = SHA-256d(R || h); output is AES-256 in counter mode under R.
class SeedGenerator {
 public:
  explicit SeedGenerator(std::size_t pool_count = kDefaultPoolCount,
                         double min_pool_entropy = kDefaultMinPoolEntropy);

  /// Routes the event to pool source_id mod pool_count:
  /// P_i <- SHA-256(P_i || event). Returns the pool index.
  std::size_t pool_feed(std::size_t source_id, std::span<const std::uint8_t> event, double declared_entropy_bits);

  [[nodiscard]] bool reseed_ready() const noexcept;
  /// Returns the indices of the pools that were folded into R.
  std::vector<std::size_t> reseed();
  SeedOutput generate(std::size_t seed_bits);
  /// Reseed when pool 0 is ready, then generate.
  SeedOutput next_seed_pair(std::size_t seed_bits);

  [[nodiscard]] const GeneratorState& state() const noexcept { return state_; }
  [[nodiscard]] std::size_t pool_count() const noexcept { return state_.pools.size(); }
  [[nodiscard]] double min_pool_entropy() const noexcept { return min_pool_entropy_; }

  /// Audit log: `FEED pool sha256(event)`, `RESEED C_p pools`, `GEN s_l`.
  void set_transcript(std::vector<std::string>* sink) noexcept { transcript_ = sink; }

  /// All-zero digest a pool holds when empty.
  static crypto::Digest empty_pool();

 private:
  void log(std::string line);

  GeneratorState state_;
  double min_pool_entropy_;
  std::vector<std::string>* transcript_ = nullptr;
};

}  // namespace phydsss::rsg
