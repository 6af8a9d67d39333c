#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace phydsss::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20261014;
  /// Multiplies every trial count; 1.0 runs the full-size criteria.
  double scale = 1.0;
  /// Bank files for the m-sequence suite; empty means every *.txt in bank_dir,
  /// or the generated banks for degrees 2..12 if bank_dir is empty too.
  std::vector<std::filesystem::path> bank_files;
  std::filesystem::path bank_dir;
  /// Where determinism runs write their outputs; defaults to a temp dir.
  std::filesystem::path scratch_dir;
};

CriterionResult theorem1_oracle(const VerifyOptions& opts);
CriterionResult saturation_shape(const VerifyOptions& opts);
CriterionResult throughput_shape(const VerifyOptions& opts);
CriterionResult key_agreement(const VerifyOptions& opts);
CriterionResult sketch_correctness(const VerifyOptions& opts);
CriterionResult msequence_suite(const VerifyOptions& opts);
CriterionResult fortuna_schedule(const VerifyOptions& opts);
CriterionResult processing_gain(const VerifyOptions& opts);
CriterionResult replay_neutralization(const VerifyOptions& opts);
CriterionResult determinism(const VerifyOptions& opts);

/// theorem1 saturation throughput agreement sketch msequence fortuna gain
/// replay determinism, plus "all".
std::vector<std::string> suite_names();
std::vector<CriterionResult> run_suite(std::string_view name, const VerifyOptions& opts);

/// `[PASS] 6 msequence: detail`
std::string format_result(const CriterionResult& r);

// Oracles shared with the tests.

/// Monte Carlo P_s: exponential gains, RACS SINR, thresholding.
double monte_carlo_ps(unsigned key_bits, double L, double gamma_ab, double gamma_eb, double gamma_th, double phi,
                      std::size_t trials, std::uint64_t seed);

struct SequenceProperties {
  std::uint64_t period = 0;  // minimal period of the output bits
  std::uint64_t ones = 0;    // ones in one period
  bool two_valued_autocorrelation = false;  // every off-peak value is exactly -1
};
/// Properties measured on 2^(n+1) output bits of an LFSR, bit-packed.
SequenceProperties measure_sequence(const std::vector<std::uint8_t>& bits, std::uint64_t expected_period);

}  // namespace phydsss::verify
