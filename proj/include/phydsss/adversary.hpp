#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "phydsss/dsss.hpp"
#include "phydsss/rng.hpp"

namespace phydsss::adversary {

enum class JammerStrategy { broadband, racs, replay };

std::string_view strategy_name(JammerStrategy s);
JammerStrategy parse_strategy(std::string_view name);

struct JammerConfig {
  JammerStrategy strategy = JammerStrategy::racs;
  /// gamma_eb = P_e d_eb^-alpha / sigma_b^2, linear.
  double gamma_eb = 0.0;
  /// Attacker's knowledge of the key rate (RACS); 0 means "use k_t".
  unsigned key_bits = 0;
  std::size_t delay_symbols = 1;  // replay

  void validate() const;
};

/// Cap on S = 2^k_r - 1 enumerated codes.
inline constexpr std::size_t kDefaultCodeCap = std::size_t{1} << 20;

/// Seed bits for enumerated value v: k_r-bit big-endian representation.
BitString racs_seed(std::uint64_t value, unsigned key_bits);

/// One code per nonzero k_r-bit seed through the legitimate SSG path
/// (lfsr_seed_from + lfsr_generate) with the known polynomial.
std::vector<dsss::SpreadingCode> racs_code_set(unsigned key_bits, const dsss::PrimitivePolyBank& bank,
                                               std::size_t poly_index, std::size_t chips,
                                               std::size_t cap = kDefaultCodeCap);

/// Chip-wise sum of the code set, sum_i C_i[j].
std::vector<double> code_superposition(std::span<const dsss::SpreadingCode> codes);
/// Same sum without materializing the codes.
std::vector<double> racs_superposition(unsigned key_bits, const dsss::PolyEntry& poly, std::size_t chips,
                                       std::size_t cap = kDefaultCodeCap);

/// sqrt(power / S) * x_e * sum_i C_i, x_e a random +-1 symbol.
std::vector<double> racs_waveform(std::span<const dsss::SpreadingCode> codes, double power, RngStream& rng);

/// Expected chip power of the RACS waveform, power * mean_j (sum_i C_i[j])^2 / S.
double racs_expected_power(std::span<const dsss::SpreadingCode> codes, double power);

/// phi = sum_i code_correlation(C_i, C_ab).
double effective_interference(std::span<const dsss::SpreadingCode> codes, const dsss::SpreadingCode& legit);
/// Same from a precomputed superposition: (1/L) sum_j sup[j] C_ab[j].
double effective_interference(std::span<const double> superposition, const dsss::SpreadingCode& legit);
/// Post-despread jammer power factor (sum_i phi_i)^2, which is what a
/// synchronous chip-level receiver measures per symbol.
double interference_power_factor(std::span<const dsss::SpreadingCode> codes, const dsss::SpreadingCode& legit);

/// i.i.d. Gaussian chips of the given power.
std::vector<double> broadband_waveform(std::size_t chips, double power, RngStream& rng);

/// sqrt(power) * random_symbol * captured.
std::vector<double> replay_waveform(std::span<const double> captured, int random_symbol, double power);

/// Capture buffer of the last few transmitted symbols, single-owner.
class ReplayJammer {
 public:
  explicit ReplayJammer(std::size_t delay_symbols);

  void capture(std::span<const double> symbol_chips);
  /// Chips replayed against the current symbol; empty until `delay`
  /// symbols have been captured.
  [[nodiscard]] std::vector<double> waveform(int random_symbol, double power) const;
  [[nodiscard]] std::size_t delay() const noexcept { return delay_; }

 private:
  std::size_t delay_;
  std::deque<std::vector<double>> history_;
};

}  // namespace phydsss::adversary
