#include "phydsss/adversary.hpp"

#include <cmath>
#include <string>

#include "phydsss/errors.hpp"

namespace phydsss::adversary {

std::string_view strategy_name(JammerStrategy s) {
  switch (s) {
    case JammerStrategy::broadband: return "broadband";
    case JammerStrategy::racs: return "racs";
    case JammerStrategy::replay: return "replay";
  }
  return "racs";
}

JammerStrategy parse_strategy(std::string_view name) {
  if (name == "broadband") return JammerStrategy::broadband;
  if (name == "racs") return JammerStrategy::racs;
  if (name == "replay") return JammerStrategy::replay;
  throw ValidationError("unknown jammer strategy '" + std::string(name) + "'");
}

void JammerConfig::validate() const {
  if (!(gamma_eb >= 0.0) || !std::isfinite(gamma_eb)) throw ValidationError("jammer: gamma_eb must be >= 0");
  if (strategy == JammerStrategy::replay && delay_symbols < 1) {
    throw ValidationError("jammer: replay delay must be >= 1 symbol");
  }
}

namespace {

std::size_t code_count(unsigned key_bits, std::size_t cap) {
  if (key_bits < 1) throw ValidationError("racs: k_r must be >= 1");
  if (key_bits >= 63 || ((std::size_t{1} << key_bits) - 1) > cap) {
    throw ResourceError("racs: 2^" + std::to_string(key_bits) + " - 1 codes exceeds the cap of " +
                        std::to_string(cap));
  }
  return (std::size_t{1} << key_bits) - 1;
}

}  // namespace

BitString racs_seed(std::uint64_t value, unsigned key_bits) { return BitString::from_uint(value, key_bits); }

std::vector<dsss::SpreadingCode> racs_code_set(unsigned key_bits, const dsss::PrimitivePolyBank& bank,
                                               std::size_t poly_index, std::size_t chips, std::size_t cap) {
  const std::size_t count = code_count(key_bits, cap);
  const auto& poly = bank.at(poly_index);
  std::vector<dsss::SpreadingCode> codes;
  codes.reserve(count);
  for (std::uint64_t v = 1; v <= count; ++v) {
    codes.push_back(dsss::lfsr_generate(poly, dsss::lfsr_seed_from(racs_seed(v, key_bits), poly.degree), chips));
  }
  return codes;
}

std::vector<double> code_superposition(std::span<const dsss::SpreadingCode> codes) {
  if (codes.empty()) throw ValidationError("racs: empty code set");
  const std::size_t L = codes.front().length();
  std::vector<double> sum(L, 0.0);
  for (const auto& c : codes) {
    if (c.length() != L) throw ValidationError("racs: codes differ in length");
    for (std::size_t j = 0; j < L; ++j) sum[j] += c[j];
  }
  return sum;
}

std::vector<double> racs_superposition(unsigned key_bits, const dsss::PolyEntry& poly, std::size_t chips,
                                       std::size_t cap) {
  const std::size_t count = code_count(key_bits, cap);
  std::vector<long> sum(chips, 0);
  for (std::uint64_t v = 1; v <= count; ++v) {
    const auto bits = dsss::lfsr_bits(poly, dsss::lfsr_seed_from(racs_seed(v, key_bits), poly.degree), chips);
    for (std::size_t j = 0; j < chips; ++j) sum[j] += 1 - 2 * bits[j];
  }
  return std::vector<double>(sum.begin(), sum.end());
}

std::vector<double> racs_waveform(std::span<const dsss::SpreadingCode> codes, double power, RngStream& rng) {
  if (!(power >= 0.0)) throw ValidationError("racs_waveform: power must be >= 0");
  auto sum = code_superposition(codes);
  const double amp = std::sqrt(power / static_cast<double>(codes.size())) * rng.sign();
  for (auto& v : sum) v *= amp;
  return sum;
}

double racs_expected_power(std::span<const dsss::SpreadingCode> codes, double power) {
  const auto sum = code_superposition(codes);
  double acc = 0.0;
  for (double v : sum) acc += v * v;
  return power * acc / static_cast<double>(sum.size()) / static_cast<double>(codes.size());
}

double effective_interference(std::span<const dsss::SpreadingCode> codes, const dsss::SpreadingCode& legit) {
  double phi = 0.0;
  for (const auto& c : codes) phi += dsss::code_correlation(c, legit);
  return phi;
}

double effective_interference(std::span<const double> superposition, const dsss::SpreadingCode& legit) {
  if (superposition.size() != legit.length()) throw ValidationError("effective_interference: length mismatch");
  double acc = 0.0;
  for (std::size_t j = 0; j < superposition.size(); ++j) acc += superposition[j] * legit[j];
  return acc / static_cast<double>(legit.length());
}

double interference_power_factor(std::span<const dsss::SpreadingCode> codes, const dsss::SpreadingCode& legit) {
  const double phi = effective_interference(codes, legit);
  return phi * phi;
}

std::vector<double> broadband_waveform(std::size_t chips, double power, RngStream& rng) {
  if (!(power >= 0.0)) throw ValidationError("broadband_waveform: power must be >= 0");
  const double amp = std::sqrt(power);
  std::vector<double> out(chips);
  for (auto& v : out) v = amp * rng.normal();
  return out;
}

std::vector<double> replay_waveform(std::span<const double> captured, int random_symbol, double power) {
  if (!(power >= 0.0)) throw ValidationError("replay_waveform: power must be >= 0");
  const double amp = std::sqrt(power) * random_symbol;
  std::vector<double> out(captured.begin(), captured.end());
  for (auto& v : out) v *= amp;
  return out;
}

ReplayJammer::ReplayJammer(std::size_t delay_symbols) : delay_(delay_symbols) {
  if (delay_symbols < 1) throw ValidationError("ReplayJammer: delay must be >= 1 symbol");
}

void ReplayJammer::capture(std::span<const double> symbol_chips) {
  history_.emplace_back(symbol_chips.begin(), symbol_chips.end());
  while (history_.size() > delay_) history_.pop_front();
}

std::vector<double> ReplayJammer::waveform(int random_symbol, double power) const {
  if (history_.size() < delay_) return {};
  return replay_waveform(history_.front(), random_symbol, power);
}

}  // namespace phydsss::adversary
