#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "phydsss/bits.hpp"

namespace phydsss::dsss {

/// Characteristic polynomial over GF(2) as a bit mask that includes both
/// the x^degree term and the constant term: x^3 + x + 1 -> degree 3, 0xB.
/// The LFSR recurrence is s[t+n] = sum_{i<n} c_i s[t+i].
struct PolyEntry {
  unsigned degree = 0;
  std::uint64_t mask = 0;

  friend bool operator==(const PolyEntry&, const PolyEntry&) = default;
};

inline constexpr unsigned kMaxDegree = 32;

/// Order test: x has multiplicative order 2^n - 1 modulo p.
bool is_primitive(const PolyEntry& poly);
/// Period of the LFSR started from `state` (bit i = s[i]); 0 if the state
/// does not return within 2^degree steps.
std::uint64_t lfsr_period(const PolyEntry& poly, std::uint64_t state = 1);
/// All primitive polynomials of a degree, ascending by mask.
std::vector<PolyEntry> primitive_polynomials(unsigned degree);
/// phi(2^n - 1) / n.
std::uint64_t primitive_polynomial_count(unsigned degree);

class PrimitivePolyBank {
 public:
  PrimitivePolyBank() = default;
  /// Validates every entry: well-formed mask and maximal period (measured
  /// by running the LFSR for degree <= 16, order test above that).
  explicit PrimitivePolyBank(std::vector<PolyEntry> entries);

  static PrimitivePolyBank for_degree(unsigned degree);
  /// All primitive polynomials of degree 10.
  static PrimitivePolyBank default_bank();
  /// Degree-n bank matched to a code length (see degree_for_length).
  static PrimitivePolyBank for_code_length(std::size_t chips);

  /// Lines `degree tap_mask_hex`; blank lines and `#` comments ignored.
  static PrimitivePolyBank load(std::istream& in);
  static PrimitivePolyBank load_file(const std::filesystem::path& path);
  void save(std::ostream& out) const;

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] const PolyEntry& at(std::size_t i) const { return entries_.at(i); }
  [[nodiscard]] std::span<const PolyEntry> entries() const noexcept { return entries_; }

 private:
  std::vector<PolyEntry> entries_;
};

/// Throws ValidationError describing the first defect of an entry.
void validate_entry(const PolyEntry& poly);

/// LFSR degree used for L chips: L = 2^n - 1 exactly, or L = 2^n with one
/// chip of periodic continuation.
unsigned degree_for_length(std::size_t chips);

struct CodeOrigin {
  PolyEntry poly;
  BitString seed;
};

/// +-1 chip sequence.
class SpreadingCode {
 public:
  SpreadingCode() = default;
  SpreadingCode(std::vector<std::int8_t> chips, CodeOrigin origin);

  [[nodiscard]] std::size_t length() const noexcept { return chips_.size(); }
  [[nodiscard]] std::span<const std::int8_t> chips() const noexcept { return chips_; }
  [[nodiscard]] std::int8_t operator[](std::size_t i) const noexcept { return chips_[i]; }
  [[nodiscard]] const CodeOrigin& origin() const noexcept { return origin_; }
  [[nodiscard]] SpreadingCode negated() const;

  friend bool operator==(const SpreadingCode& a, const SpreadingCode& b) { return a.chips_ == b.chips_; }

 private:
  std::vector<std::int8_t> chips_;
  CodeOrigin origin_;
};

/// Index = R_p (unsigned, big-endian) mod bank size.
std::size_t select_polynomial_index(const BitString& poly_select, const PrimitivePolyBank& bank);
const PolyEntry& select_polynomial(const BitString& poly_select, const PrimitivePolyBank& bank);

/// First `degree` bits of R_s. A shorter R_s is zero-padded and its last
/// bit forced to 1; an all-zero result also gets its last bit forced.
BitString lfsr_seed_from(const BitString& seed_material, unsigned degree);

/// Raw LFSR output bits, starting with s[0] = seed[0].
std::vector<std::uint8_t> lfsr_bits(const PolyEntry& poly, const BitString& seed, std::size_t count);
/// Fibonacci LFSR output mapped bit b -> chip 1 - 2b.
SpreadingCode lfsr_generate(const PolyEntry& poly, const BitString& seed, std::size_t num_chips);

/// Full SSG path: polynomial from R_p, LFSR seed from R_s, L chips.
SpreadingCode make_code(const PrimitivePolyBank& bank, const BitString& poly_select,
                        const BitString& seed_material, std::size_t chips);

/// chip[iL + j] = symbols[i] * code[j].
std::vector<double> spread(std::span<const int> symbols, const SpreadingCode& code);
/// statistic_i = (1/L) sum_j chips[iL + j] * code[j].
std::vector<double> despread(std::span<const double> chips, const SpreadingCode& code);
/// Hard decisions (statistic >= 0 -> +1).
std::vector<int> decide(std::span<const double> statistics);

/// (1/L) sum_j c1[j] c2[j].
double code_correlation(const SpreadingCode& c1, const SpreadingCode& c2);

}  // namespace phydsss::dsss
