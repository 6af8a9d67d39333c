#include "phydsss/bits.hpp"

#include <algorithm>
#include <stdexcept>

#include "phydsss/errors.hpp"

namespace phydsss {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

BitString::BitString(std::size_t length, bool value) : bits_(length, value ? 1 : 0) {}

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw ValidationError("BitString: element values must be 0 or 1");
  }
}

BitString BitString::from_string(std::string_view s) {
  BitString out;
  out.bits_.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ValidationError("BitString: expected only '0' and '1'");
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex, std::size_t length) {
  if (length > hex.size() * 4) {
    throw ValidationError("BitString: hex string too short for requested length");
  }
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const int v = hex_value(hex[i / 4]);
    if (v < 0) throw ValidationError("BitString: invalid hex digit");
    out.bits_[i] = static_cast<std::uint8_t>((v >> (3 - i % 4)) & 1);
  }
  for (std::size_t j = (length + 3) / 4; j < hex.size(); ++j) {
    if (hex_value(hex[j]) < 0) throw ValidationError("BitString: invalid hex digit");
  }
  return out;
}

BitString BitString::from_hex(std::string_view hex) { return from_hex(hex, hex.size() * 4); }

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t length) {
  if (length > bytes.size() * 8) {
    throw ValidationError("BitString: byte buffer too short for requested length");
  }
  BitString out(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.bits_[i] = static_cast<std::uint8_t>((bytes[i / 8] >> (7 - i % 8)) & 1);
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
  return from_bytes(bytes, bytes.size() * 8);
}

BitString BitString::from_uint(std::uint64_t value, std::size_t length) {
  if (length < 64 && (value >> length) != 0) {
    throw ValidationError("BitString: value does not fit in requested length");
  }
  BitString out(length);
  for (std::size_t i = 0; i < length && i < 64; ++i) {
    out.bits_[length - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1);
  }
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::at");
  return bits_[i] != 0;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= bits_.size()) throw std::out_of_range("BitString::set");
  bits_[i] = value ? 1 : 0;
}

void BitString::flip(std::size_t i) {
  if (i >= bits_.size()) throw std::out_of_range("BitString::flip");
  bits_[i] ^= 1;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset > bits_.size() || length > bits_.size() - offset) {
    throw std::out_of_range("BitString::slice");
  }
  BitString out;
  out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                   bits_.begin() + static_cast<std::ptrdiff_t>(offset + length));
  return out;
}

std::size_t BitString::weight() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BitString& BitString::operator^=(const BitString& other) {
  if (other.size() != size()) throw ValidationError("BitString: XOR of unequal lengths");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::string BitString::to_hex() const {
  std::string s((bits_.size() + 3) / 4, '0');
  for (std::size_t j = 0; j < s.size(); ++j) {
    int v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = 4 * j + b;
      v = (v << 1) | (i < bits_.size() ? bits_[i] : 0);
    }
    s[j] = kHexDigits[v];
  }
  return s;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((bits_.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return out;
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw ValidationError("BitString: too long for 64-bit integer");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw ValidationError("hamming_distance: unequal lengths");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kHexDigits[b >> 4]);
    s.push_back(kHexDigits[b & 0xF]);
  }
  return s;
}

}  // namespace phydsss
