#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phydsss/bch.hpp"
#include "phydsss/bits.hpp"
#include "phydsss/crypto.hpp"
#include "phydsss/rng.hpp"

namespace phydsss::extractor {

/// How the guard band around the block mean is sized.
enum class GuardBand {
  variance,  // Q+- = mu +- alpha * sigma^2
  std_dev,   // Q+- = mu +- alpha * sigma
};

struct QuantizerConfig {
  double alpha_tune = 1.0;
  /// Estimates per quantized block; 0 quantizes the whole vector as one block.
  std::size_t block_len = 0;
  GuardBand guard = GuardBand::variance;

  void validate() const;
};

struct QuantizedBlock {
  BitString bits;
  std::vector<std::size_t> kept_indices;  // strictly increasing, into the source estimates
};

/// Guard-band quantizer with per-block sample mean and variance.
QuantizedBlock quantize(std::span<const double> estimates, const QuantizerConfig& cfg);

/// Quantizer with caller-supplied statistics: > mean + alpha*spread -> 1,
/// < mean - alpha*spread -> 0, otherwise dropped.
QuantizedBlock quantize_with_stats(std::span<const double> estimates, double mean, double spread,
                                   double alpha, std::size_t index_offset = 0);

/// Restricts both bit strings to the intersection of kept indices.
std::pair<BitString, BitString> align(const QuantizedBlock& a, const QuantizedBlock& b);

/// Public helper string sent from Alice to Bob.
struct SecureSketchMsg {
  BitString sketch;             // Q_u(H_ab) xor C
  crypto::Digest verify_hash{};  // SHA-256 of Q_u(H_ab)
  bch::BchParams params;

  /// `n k t sketch_hex hash_hex`
  [[nodiscard]] std::string serialize() const;
  static SecureSketchMsg parse(std::string_view line);
};

struct SketchOutput {
  SecureSketchMsg msg;
  BitString codeword;
};

/// SHA-256 over the MSB-first packed bytes of `bits`, prefixed with the bit
/// length as a 64-bit big-endian integer.
crypto::Digest hash_bits(const BitString& bits);

SketchOutput sketch_generate(const BitString& bits_a, const bch::BchCode& code, RngStream& rng);

enum class ReconcileStatus { ok, decode_failure, hash_mismatch };

std::string_view status_name(ReconcileStatus status);

struct RecoverResult {
  ReconcileStatus status = ReconcileStatus::decode_failure;
  BitString bits;  // recovered Q_u(H_ab) when status == ok
  std::size_t corrections = 0;

  [[nodiscard]] bool ok() const noexcept { return status == ReconcileStatus::ok; }
};

RecoverResult sketch_recover(const BitString& bits_b, const SecureSketchMsg& msg, const bch::BchCode& code);

struct SharedKey {
  BitString bits;
  double entropy_estimate = 0.0;  // bits
};

/// Toeplitz universal hash. The (l + n - 1)-bit diagonal vector is expanded
/// from `hash_choice_seed` by SHA-256 in counter mode.
SharedKey privacy_amplify(const BitString& bits, std::size_t out_len, const BitString& hash_choice_seed);
/// As above, but reports min(out_len, input_entropy) as the key entropy.
SharedKey privacy_amplify(const BitString& bits, std::size_t out_len, const BitString& hash_choice_seed,
                          double input_entropy);

enum class AgreementStatus { ok, decode_failure, hash_mismatch, insufficient_material };

std::string_view status_name(AgreementStatus status);

/// Everything an eavesdropper observes during one extraction.
struct PublicLeakage {
  std::vector<std::size_t> alice_indices;
  std::vector<std::size_t> bob_indices;
  std::vector<SecureSketchMsg> sketches;  // one per n-bit block
  BitString hash_seed;
  std::size_t aligned_bits = 0;  // before padding
};

struct ExtractionResult {
  SharedKey alice;
  std::optional<SharedKey> bob;
  AgreementStatus status = AgreementStatus::insufficient_material;
  PublicLeakage leakage;
  std::size_t mismatches = 0;   // Hamming distance of the aligned strings
  std::size_t corrections = 0;  // total BCH corrections at Bob

  [[nodiscard]] bool agreed() const noexcept { return status == AgreementStatus::ok; }
};

/// Seed length of the public Toeplitz hash selector.
inline constexpr std::size_t kHashSeedBits = 256;

/// quantize -> align -> per-block sketch/recover -> privacy amplification.
/// Aligned bits are cut into n-bit blocks; the last block is zero-padded.
/// Entropy estimate = max(0, aligned_bits - blocks * (n - k)), capped at l.
ExtractionResult extract_shared_key(std::span<const std::complex<double>> h_ab,
                                    std::span<const std::complex<double>> h_ba,
                                    const QuantizerConfig& cfg, const bch::BchCode& code,
                                    std::size_t key_bits, RngStream& rng);

/// Eavesdropper attempting Bob's recovery from its own observation and the
/// public transcript. Quantizes with alpha = 0 so every aligned index gets
/// a guess. Returns the key only if every block passes hash verification.
std::optional<SharedKey> eavesdrop(std::span<const std::complex<double>> h_ea, const PublicLeakage& leakage,
                                   const QuantizerConfig& cfg, const bch::BchCode& code, std::size_t key_bits);

/// Normalized bit-agreement correlation |2 * agree / len - 1|.
double block_correlation(const BitString& a, const BitString& b);

/// Greedy scan: a block is dropped when its correlation with the previously
/// kept block exceeds `threshold`. Returns indices of kept blocks.
std::vector<std::size_t> decorrelated_indices(std::span<const BitString> blocks, double threshold);
std::vector<BitString> subcarrier_decorrelate(std::span<const BitString> blocks, double threshold);

}  // namespace phydsss::extractor
