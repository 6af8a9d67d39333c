#include "phydsss/dsss.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "phydsss/errors.hpp"

namespace phydsss::dsss {

namespace {

std::uint64_t top_bit(unsigned degree) { return std::uint64_t{1} << degree; }

// a * b mod p over GF(2); operands reduced (degree < p.degree).
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, const PolyEntry& p) {
  const std::uint64_t top = top_bit(p.degree);
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= p.mask;
  }
  return r;
}

std::uint64_t x_pow_mod(std::uint64_t e, const PolyEntry& p) {
  std::uint64_t result = 1;
  std::uint64_t base = 2;
  while (e) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= v; ++q) {
    if (v % q) continue;
    out.push_back(q);
    while (v % q == 0) v /= q;
  }
  if (v > 1) out.push_back(v);
  return out;
}

bool well_formed(const PolyEntry& p) {
  return p.degree >= 2 && p.degree <= kMaxDegree && (p.mask >> p.degree) == 1 && (p.mask & 1) == 1;
}

}  // namespace

bool is_primitive(const PolyEntry& poly) {
  if (!well_formed(poly)) return false;
  const std::uint64_t order = top_bit(poly.degree) - 1;
  if (x_pow_mod(order, poly) != 1) return false;
  for (std::uint64_t q : prime_factors(order)) {
    if (x_pow_mod(order / q, poly) == 1) return false;
  }
  return true;
}

std::uint64_t lfsr_period(const PolyEntry& poly, std::uint64_t state) {
  if (!well_formed(poly)) throw ValidationError("lfsr_period: malformed polynomial");
  const unsigned n = poly.degree;
  const std::uint64_t taps = poly.mask & (top_bit(n) - 1);
  state &= top_bit(n) - 1;
  if (state == 0) return 0;
  std::uint64_t w = state;
  const std::uint64_t limit = top_bit(n);
  for (std::uint64_t t = 1; t <= limit; ++t) {
    const std::uint64_t fb = static_cast<std::uint64_t>(std::popcount(w & taps) & 1);
    w = (w >> 1) | (fb << (n - 1));
    if (w == state) return t;
  }
  return 0;
}

std::vector<PolyEntry> primitive_polynomials(unsigned degree) {
  if (degree < 2 || degree > 20) throw ValidationError("primitive_polynomials: degree must be in 2..20");
  std::vector<PolyEntry> out;
  const std::uint64_t top = top_bit(degree);
  for (std::uint64_t low = 1; low < top; low += 2) {
    const PolyEntry p{degree, top | low};
    if (is_primitive(p)) out.push_back(p);
  }
  return out;
}

std::uint64_t primitive_polynomial_count(unsigned degree) {
  if (degree < 1 || degree > kMaxDegree) throw ValidationError("primitive_polynomial_count: bad degree");
  const std::uint64_t order = top_bit(degree) - 1;
  std::uint64_t phi = order;
  for (std::uint64_t q : prime_factors(order)) phi = phi / q * (q - 1);
  return phi / degree;
}

void validate_entry(const PolyEntry& poly) {
  if (poly.degree < 2 || poly.degree > kMaxDegree) {
    throw ValidationError("polynomial degree " + std::to_string(poly.degree) + " outside 2.." +
                          std::to_string(kMaxDegree));
  }
  if ((poly.mask >> poly.degree) != 1) throw ValidationError("tap mask does not have degree " + std::to_string(poly.degree));
  if ((poly.mask & 1) == 0) throw ValidationError("tap mask lacks the constant term");
  const bool maximal = poly.degree <= 16 ? lfsr_period(poly, 1) == top_bit(poly.degree) - 1 : is_primitive(poly);
  if (!maximal) throw ValidationError("polynomial is not primitive (LFSR period is not 2^n - 1)");
}

PrimitivePolyBank::PrimitivePolyBank(std::vector<PolyEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    try {
      validate_entry(entries_[i]);
    } catch (const ValidationError& e) {
      throw ValidationError("bank entry " + std::to_string(i) + ": " + e.what());
    }
  }
}

PrimitivePolyBank PrimitivePolyBank::for_degree(unsigned degree) {
  return PrimitivePolyBank(primitive_polynomials(degree));
}

PrimitivePolyBank PrimitivePolyBank::default_bank() { return for_degree(10); }

PrimitivePolyBank PrimitivePolyBank::for_code_length(std::size_t chips) {
  return for_degree(degree_for_length(chips));
}

PrimitivePolyBank PrimitivePolyBank::load(std::istream& in) {
  std::vector<PolyEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string degree_s, mask_s, extra;
    if (!(fields >> degree_s)) continue;
    if (!(fields >> mask_s) || (fields >> extra)) {
      throw ValidationError("bank line " + std::to_string(line_no) + ": expected `degree tap_mask_hex`");
    }
    PolyEntry p;
    try {
      std::size_t pos = 0;
      const unsigned long d = std::stoul(degree_s, &pos, 10);
      if (pos != degree_s.size()) throw std::invalid_argument("degree");
      if (mask_s.rfind("0x", 0) == 0 || mask_s.rfind("0X", 0) == 0) mask_s.erase(0, 2);
      const unsigned long long m = std::stoull(mask_s, &pos, 16);
      if (pos != mask_s.size()) throw std::invalid_argument("mask");
      p = {static_cast<unsigned>(d), m};
    } catch (const std::logic_error&) {
      throw ValidationError("bank line " + std::to_string(line_no) + ": unparseable numbers");
    }
    try {
      validate_entry(p);
    } catch (const ValidationError& e) {
      throw ValidationError("bank line " + std::to_string(line_no) + ": " + e.what());
    }
    entries.push_back(p);
  }
  PrimitivePolyBank bank;
  bank.entries_ = std::move(entries);
  return bank;
}

PrimitivePolyBank PrimitivePolyBank::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open bank file '" + path.string() + "'");
  try {
    return load(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void PrimitivePolyBank::save(std::ostream& out) const {
  for (const auto& e : entries_) {
    std::ostringstream hex;
    hex << std::hex << e.mask;
    out << e.degree << ' ' << hex.str() << '\n';
  }
}

unsigned degree_for_length(std::size_t chips) {
  if (chips < 3) throw ValidationError("code length must be >= 3");
  const unsigned width = static_cast<unsigned>(std::bit_width(chips));
  const unsigned degree = std::has_single_bit(chips) ? width - 1 : width;
  if (degree > 20) throw ValidationError("code length too large");
  return degree;
}

SpreadingCode::SpreadingCode(std::vector<std::int8_t> chips, CodeOrigin origin)
    : chips_(std::move(chips)), origin_(std::move(origin)) {
  if (chips_.empty()) throw ValidationError("SpreadingCode: empty chip sequence");
  for (auto c : chips_) {
    if (c != 1 && c != -1) throw ValidationError("SpreadingCode: chips must be +1 or -1");
  }
}

SpreadingCode SpreadingCode::negated() const {
  auto chips = chips_;
  for (auto& c : chips) c = static_cast<std::int8_t>(-c);
  return SpreadingCode(std::move(chips), origin_);
}

std::size_t select_polynomial_index(const BitString& poly_select, const PrimitivePolyBank& bank) {
  if (bank.empty()) throw ConfigError("select_polynomial: empty polynomial bank");
  const std::uint64_t size = bank.size();
  std::uint64_t rem = 0;
  for (std::size_t i = 0; i < poly_select.size(); ++i) {
    rem = ((rem << 1) | static_cast<std::uint64_t>(poly_select[i])) % size;
  }
  return static_cast<std::size_t>(rem);
}

const PolyEntry& select_polynomial(const BitString& poly_select, const PrimitivePolyBank& bank) {
  return bank.at(select_polynomial_index(poly_select, bank));
}

BitString lfsr_seed_from(const BitString& seed_material, unsigned degree) {
  if (degree == 0) throw ValidationError("lfsr_seed_from: degree must be positive");
  const bool short_input = seed_material.size() < degree;
  BitString s = short_input ? seed_material : seed_material.slice(0, degree);
  s.resize(degree);
  if (short_input || s.all_zero()) s.set(degree - 1, true);
  return s;
}

std::vector<std::uint8_t> lfsr_bits(const PolyEntry& poly, const BitString& seed, std::size_t count) {
  validate_entry(poly);
  const unsigned n = poly.degree;
  if (seed.size() != n) throw ValidationError("lfsr: seed length must equal the polynomial degree");
  if (seed.all_zero()) throw ValidationError("lfsr: all-zero seed is a fixed point");
  std::uint64_t w = 0;
  for (unsigned i = 0; i < n; ++i) w |= static_cast<std::uint64_t>(seed[i]) << i;
  const std::uint64_t taps = poly.mask & (top_bit(n) - 1);
  std::vector<std::uint8_t> out(count);
  for (std::size_t t = 0; t < count; ++t) {
    out[t] = static_cast<std::uint8_t>(w & 1);
    const std::uint64_t fb = static_cast<std::uint64_t>(std::popcount(w & taps) & 1);
    w = (w >> 1) | (fb << (n - 1));
  }
  return out;
}

SpreadingCode lfsr_generate(const PolyEntry& poly, const BitString& seed, std::size_t num_chips) {
  if (num_chips == 0) throw ValidationError("lfsr_generate: num_chips must be positive");
  const auto bits = lfsr_bits(poly, seed, num_chips);
  std::vector<std::int8_t> chips(num_chips);
  for (std::size_t i = 0; i < num_chips; ++i) chips[i] = static_cast<std::int8_t>(1 - 2 * bits[i]);
  return SpreadingCode(std::move(chips), CodeOrigin{poly, seed});
}

SpreadingCode make_code(const PrimitivePolyBank& bank, const BitString& poly_select,
                        const BitString& seed_material, std::size_t chips) {
  const PolyEntry& poly = select_polynomial(poly_select, bank);
  return lfsr_generate(poly, lfsr_seed_from(seed_material, poly.degree), chips);
}

std::vector<double> spread(std::span<const int> symbols, const SpreadingCode& code) {
  if (symbols.empty()) throw ValidationError("spread: no symbols");
  const std::size_t L = code.length();
  std::vector<double> out(symbols.size() * L);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t j = 0; j < L; ++j) out[i * L + j] = static_cast<double>(symbols[i] * code[j]);
  }
  return out;
}

std::vector<double> despread(std::span<const double> chips, const SpreadingCode& code) {
  const std::size_t L = code.length();
  if (L == 0 || chips.size() % L != 0) throw ValidationError("despread: chip count not a multiple of L");
  std::vector<double> out(chips.size() / L);
  const double inv = 1.0 / static_cast<double>(L);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < L; ++j) acc += chips[i * L + j] * code[j];
    out[i] = acc * inv;
  }
  return out;
}

std::vector<int> decide(std::span<const double> statistics) {
  std::vector<int> out(statistics.size());
  for (std::size_t i = 0; i < statistics.size(); ++i) out[i] = statistics[i] >= 0.0 ? 1 : -1;
  return out;
}

double code_correlation(const SpreadingCode& c1, const SpreadingCode& c2) {
  if (c1.length() != c2.length() || c1.length() == 0) {
    throw ValidationError("code_correlation: codes differ in length");
  }
  long acc = 0;
  for (std::size_t j = 0; j < c1.length(); ++j) acc += c1[j] * c2[j];
  return static_cast<double>(acc) / static_cast<double>(c1.length());
}

}  // namespace phydsss::dsss
