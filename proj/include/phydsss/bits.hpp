#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace phydsss {

/// Ordered binary sequence. One byte per bit internally (value 0 or 1).
///
/// Hex form packs bits MSB-first into nibbles; a trailing partial nibble is
/// zero-filled on the right. Byte form packs MSB-first the same way.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t length, bool value = false);
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString from_string(std::string_view zeros_and_ones);
  static BitString from_hex(std::string_view hex, std::size_t length);
  static BitString from_hex(std::string_view hex);
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t length);
  static BitString from_bytes(std::span<const std::uint8_t> bytes);
  /// Big-endian binary representation of `value` in exactly `length` bits.
  static BitString from_uint(std::uint64_t value, std::size_t length);

  [[nodiscard]] std::size_t size() const noexcept { return bits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return bits_.empty(); }
  [[nodiscard]] bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  [[nodiscard]] bool at(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);
  void push_back(bool value) { bits_.push_back(value ? 1 : 0); }
  void append(const BitString& other);
  void resize(std::size_t length) { bits_.resize(length, 0); }

  [[nodiscard]] BitString slice(std::size_t offset, std::size_t length) const;
  [[nodiscard]] std::size_t weight() const noexcept;
  [[nodiscard]] bool all_zero() const noexcept { return weight() == 0; }

  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString lhs, const BitString& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitString&, const BitString&) = default;

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::string to_hex() const;
  [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
  [[nodiscard]] std::uint64_t to_uint() const;
  [[nodiscard]] const std::vector<std::uint8_t>& raw() const noexcept { return bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

[[nodiscard]] std::size_t hamming_distance(const BitString& a, const BitString& b);

std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace phydsss
