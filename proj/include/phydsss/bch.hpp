#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "phydsss/bits.hpp"
#include "phydsss/rng.hpp"

namespace phydsss::bch {

/// Binary primitive BCH code parameters: n = 2^m - 1, k message bits,
/// t correctable errors (designed distance 2t + 1).
struct BchParams {
  unsigned n = 15;
  unsigned k = 7;
  unsigned t = 2;

  friend bool operator==(const BchParams&, const BchParams&) = default;
};

inline constexpr BchParams kTestParams{15, 7, 2};
inline constexpr BchParams kProductionParams{255, 131, 18};

/// Fixed primitive polynomial for GF(2^m), m in 3..16, including the x^m
/// term (e.g. m = 4 -> 0x13 = x^4 + x + 1).
std::uint32_t field_polynomial(unsigned m);

/// GF(2^m) log/antilog arithmetic.
class GaloisField {
 public:
  explicit GaloisField(unsigned m);

  [[nodiscard]] unsigned degree() const noexcept { return m_; }
  [[nodiscard]] unsigned order() const noexcept { return n_; }  // 2^m - 1
  [[nodiscard]] std::uint32_t alpha_pow(long long e) const;
  [[nodiscard]] std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  [[nodiscard]] std::uint32_t div(std::uint32_t a, std::uint32_t b) const;
  [[nodiscard]] std::uint32_t inv(std::uint32_t a) const { return div(1, a); }
  [[nodiscard]] unsigned log(std::uint32_t a) const;

 private:
  unsigned m_;
  unsigned n_;
  std::vector<std::uint32_t> exp_;
  std::vector<unsigned> log_;
};

struct DecodeResult {
  std::optional<BitString> codeword;  // empty on decode failure
  std::size_t corrections = 0;

  [[nodiscard]] bool ok() const noexcept { return codeword.has_value(); }
};

/// Systematic binary BCH code. Bit i of a codeword is the coefficient of
/// x^(n-1-i); bits [0, k) carry the message, bits [k, n) the parity.
/// Decoding: syndromes, Berlekamp-Massey, Chien search; bounded distance t.
class BchCode {
 public:
  explicit BchCode(BchParams params);

  [[nodiscard]] const BchParams& params() const noexcept { return params_; }
  [[nodiscard]] const GaloisField& field() const noexcept { return field_; }
  /// Generator polynomial coefficients, index = degree.
  [[nodiscard]] const std::vector<std::uint8_t>& generator() const noexcept { return generator_; }

  [[nodiscard]] BitString encode(const BitString& message) const;
  [[nodiscard]] DecodeResult decode(const BitString& received) const;
  [[nodiscard]] BitString random_codeword(RngStream& rng) const;
  [[nodiscard]] BitString message_of(const BitString& codeword) const;

  /// S_j = r(alpha^j) for j = 1..2t.
  [[nodiscard]] std::vector<std::uint32_t> syndromes(const BitString& word) const;
  [[nodiscard]] bool is_codeword(const BitString& word) const;
  /// Independent membership test: g(x) divides the word polynomial.
  [[nodiscard]] bool divisible_by_generator(const BitString& word) const;

 private:
  void check_length(const BitString& word, std::size_t expected, const char* what) const;

  BchParams params_;
  GaloisField field_;
  std::vector<std::uint8_t> generator_;
};

/// One line of a conformance vector file: `n k t message_hex codeword_hex`.
struct ConformanceVector {
  BchParams params;
  BitString message;
  BitString codeword;
};

void write_conformance(std::ostream& out, std::span<const ConformanceVector> vectors);
std::vector<ConformanceVector> read_conformance(std::istream& in);
/// Deterministic vectors for cross-implementation checks.
std::vector<ConformanceVector> make_conformance(const BchCode& code, std::size_t count, RngStream& rng);

}  // namespace phydsss::bch
