#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>

namespace phydsss::crypto {

using Digest = std::array<std::uint8_t, 32>;
using Block = std::array<std::uint8_t, 16>;
using Key256 = std::array<std::uint8_t, 32>;

/// SHA-256 (FIPS 180-4).
Digest sha256(std::span<const std::uint8_t> data);
/// SHA-256 applied twice: SHA-256(SHA-256(data)).
Digest sha256d(std::span<const std::uint8_t> data);

/// Incremental SHA-256 for multi-part messages.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  Sha256(Sha256&&) noexcept;
  Sha256& operator=(Sha256&&) noexcept;

  Sha256& update(std::span<const std::uint8_t> data);
  Digest finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// AES-256 single-block encryption (FIPS 197). Key schedule lives for the
/// lifetime of the object.
class Aes256 {
 public:
  explicit Aes256(const Key256& key);
  ~Aes256();
  Aes256(const Aes256&) = delete;
  Aes256& operator=(const Aes256&) = delete;
  Aes256(Aes256&&) noexcept;
  Aes256& operator=(Aes256&&) noexcept;

  [[nodiscard]] Block encrypt(const Block& plaintext) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace phydsss::crypto
