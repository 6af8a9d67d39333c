#include "phydsss/extractor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phydsss/errors.hpp"
#include "phydsss/stats.hpp"

namespace phydsss::extractor {

void QuantizerConfig::validate() const {
  if (!(alpha_tune >= 0.0) || !std::isfinite(alpha_tune)) {
    throw ValidationError("QuantizerConfig: alpha_tune must be >= 0");
  }
}

QuantizedBlock quantize_with_stats(std::span<const double> estimates, double mean, double spread,
                                   double alpha, std::size_t index_offset) {
  const double upper = mean + alpha * spread;
  const double lower = mean - alpha * spread;
  QuantizedBlock out;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double v = estimates[i];
    if (v > upper) {
      out.bits.push_back(true);
      out.kept_indices.push_back(index_offset + i);
    } else if (v < lower) {
      out.bits.push_back(false);
      out.kept_indices.push_back(index_offset + i);
    }
  }
  return out;
}

QuantizedBlock quantize(std::span<const double> estimates, const QuantizerConfig& cfg) {
  cfg.validate();
  if (estimates.empty()) throw ValidationError("quantize: empty estimate vector");
  for (double v : estimates) {
    if (!std::isfinite(v)) throw ValidationError("quantize: non-finite estimate");
  }
  const std::size_t block = cfg.block_len == 0 ? estimates.size() : cfg.block_len;
  QuantizedBlock out;
  for (std::size_t off = 0; off < estimates.size(); off += block) {
    const auto chunk = estimates.subspan(off, std::min(block, estimates.size() - off));
    const double mu = stats::mean(chunk);
    const double var = stats::sample_variance(chunk);
    const double spread = cfg.guard == GuardBand::variance ? var : std::sqrt(var);
    auto part = quantize_with_stats(chunk, mu, spread, cfg.alpha_tune, off);
    out.bits.append(part.bits);
    out.kept_indices.insert(out.kept_indices.end(), part.kept_indices.begin(), part.kept_indices.end());
  }
  return out;
}

std::pair<BitString, BitString> align(const QuantizedBlock& a, const QuantizedBlock& b) {
  BitString ra, rb;
  std::size_t i = 0, j = 0;
  while (i < a.kept_indices.size() && j < b.kept_indices.size()) {
    if (a.kept_indices[i] == b.kept_indices[j]) {
      ra.push_back(a.bits[i]);
      rb.push_back(b.bits[j]);
      ++i;
      ++j;
    } else if (a.kept_indices[i] < b.kept_indices[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return {std::move(ra), std::move(rb)};
}

crypto::Digest hash_bits(const BitString& bits) {
  crypto::Sha256 h;
  std::uint8_t len[8];
  const std::uint64_t n = bits.size();
  for (int i = 0; i < 8; ++i) len[i] = static_cast<std::uint8_t>(n >> (56 - 8 * i));
  h.update(len);
  h.update(bits.to_bytes());
  return h.finish();
}

std::string SecureSketchMsg::serialize() const {
  std::ostringstream out;
  out << params.n << ' ' << params.k << ' ' << params.t << ' ' << sketch.to_hex() << ' ' << to_hex(verify_hash);
  return out.str();
}

SecureSketchMsg SecureSketchMsg::parse(std::string_view line) {
  std::istringstream in{std::string(line)};
  SecureSketchMsg msg;
  std::string sketch_hex, hash_hex;
  if (!(in >> msg.params.n >> msg.params.k >> msg.params.t >> sketch_hex >> hash_hex)) {
    throw ValidationError("SecureSketchMsg: expected `n k t sketch_hex hash_hex`");
  }
  msg.sketch = BitString::from_hex(sketch_hex, msg.params.n);
  if (hash_hex.size() != 64) throw ValidationError("SecureSketchMsg: hash must be 64 hex digits");
  const auto hash_bits_ = BitString::from_hex(hash_hex).to_bytes();
  std::copy(hash_bits_.begin(), hash_bits_.end(), msg.verify_hash.begin());
  return msg;
}

SketchOutput sketch_generate(const BitString& bits_a, const bch::BchCode& code, RngStream& rng) {
  if (bits_a.size() != code.params().n) {
    throw ValidationError("sketch_generate: input must be exactly n bits");
  }
  BitString c = code.random_codeword(rng);
  SecureSketchMsg msg{bits_a ^ c, hash_bits(bits_a), code.params()};
  return {std::move(msg), std::move(c)};
}

std::string_view status_name(ReconcileStatus status) {
  switch (status) {
    case ReconcileStatus::ok: return "ok";
    case ReconcileStatus::decode_failure: return "decode_failure";
    case ReconcileStatus::hash_mismatch: return "hash_mismatch";
  }
  return "unknown";
}

RecoverResult sketch_recover(const BitString& bits_b, const SecureSketchMsg& msg, const bch::BchCode& code) {
  if (!(msg.params == code.params())) throw ValidationError("sketch_recover: code parameters differ from message");
  if (bits_b.size() != msg.params.n || msg.sketch.size() != msg.params.n) {
    throw ValidationError("sketch_recover: input must be exactly n bits");
  }
  const auto decoded = code.decode(bits_b ^ msg.sketch);
  if (!decoded.ok()) return {ReconcileStatus::decode_failure, {}, 0};
  BitString candidate = msg.sketch ^ *decoded.codeword;
  if (hash_bits(candidate) != msg.verify_hash) return {ReconcileStatus::hash_mismatch, {}, decoded.corrections};
  return {ReconcileStatus::ok, std::move(candidate), decoded.corrections};
}

namespace {

BitString expand_seed(const BitString& seed, std::size_t length) {
  const auto seed_digest = hash_bits(seed);
  BitString out;
  std::uint64_t counter = 0;
  while (out.size() < length) {
    crypto::Sha256 h;
    h.update(seed_digest);
    std::uint8_t ctr[8];
    for (int i = 0; i < 8; ++i) ctr[i] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
    h.update(ctr);
    out.append(BitString::from_bytes(h.finish()));
    ++counter;
  }
  out.resize(length);
  return out;
}

}  // namespace

SharedKey privacy_amplify(const BitString& bits, std::size_t out_len, const BitString& hash_choice_seed,
                          double input_entropy) {
  if (out_len == 0) throw ValidationError("privacy_amplify: output length must be positive");
  if (out_len > bits.size()) throw ValidationError("privacy_amplify: output longer than input");
  const std::size_t n = bits.size();
  // Toeplitz matrix T[i][j] = diag[i - j + n - 1].
  const BitString diag = expand_seed(hash_choice_seed, out_len + n - 1);
  BitString out(out_len);
  for (std::size_t j = 0; j < n; ++j) {
    if (!bits[j]) continue;
    for (std::size_t i = 0; i < out_len; ++i) {
      if (diag[i + n - 1 - j]) out.flip(i);
    }
  }
  return {std::move(out), std::clamp(input_entropy, 0.0, static_cast<double>(out_len))};
}

SharedKey privacy_amplify(const BitString& bits, std::size_t out_len, const BitString& hash_choice_seed) {
  return privacy_amplify(bits, out_len, hash_choice_seed, static_cast<double>(bits.size()));
}

std::string_view status_name(AgreementStatus status) {
  switch (status) {
    case AgreementStatus::ok: return "ok";
    case AgreementStatus::decode_failure: return "decode_failure";
    case AgreementStatus::hash_mismatch: return "hash_mismatch";
    case AgreementStatus::insufficient_material: return "insufficient_material";
  }
  return "unknown";
}

namespace {

std::vector<double> magnitudes(std::span<const std::complex<double>> h) {
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = std::abs(h[i]);
  return out;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ExtractionResult extract_shared_key(std::span<const std::complex<double>> h_ab,
                                    std::span<const std::complex<double>> h_ba,
                                    const QuantizerConfig& cfg, const bch::BchCode& code,
                                    std::size_t key_bits, RngStream& rng) {
  if (h_ab.size() != h_ba.size()) throw ValidationError("extract_shared_key: rows differ in length");
  if (key_bits == 0) throw ValidationError("extract_shared_key: key length must be positive");

  const auto qa = quantize(magnitudes(h_ab), cfg);
  const auto qb = quantize(magnitudes(h_ba), cfg);
  auto [bits_a, bits_b] = align(qa, qb);

  ExtractionResult result;
  result.leakage.alice_indices = qa.kept_indices;
  result.leakage.bob_indices = qb.kept_indices;
  result.leakage.aligned_bits = bits_a.size();
  result.mismatches = hamming_distance(bits_a, bits_b);
  if (bits_a.size() < key_bits) {
    result.status = AgreementStatus::insufficient_material;
    return result;
  }

  const std::size_t n = code.params().n;
  const std::size_t aligned = bits_a.size();
  const std::size_t blocks = (aligned + n - 1) / n;
  bits_a.resize(blocks * n);
  bits_b.resize(blocks * n);

  BitString recovered;
  AgreementStatus status = AgreementStatus::ok;
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    auto sk = sketch_generate(bits_a.slice(blk * n, n), code, rng);
    const auto rec = sketch_recover(bits_b.slice(blk * n, n), sk.msg, code);
    result.leakage.sketches.push_back(std::move(sk.msg));
    result.corrections += rec.corrections;
    if (rec.ok()) {
      recovered.append(rec.bits);
    } else if (status == AgreementStatus::ok) {
      status = rec.status == ReconcileStatus::decode_failure ? AgreementStatus::decode_failure
                                                              : AgreementStatus::hash_mismatch;
    }
  }
  result.leakage.hash_seed = rng.bits(kHashSeedBits);

  const double leaked = static_cast<double>(blocks * (n - code.params().k));
  const double entropy = std::max(0.0, static_cast<double>(aligned) - leaked);
  result.alice = privacy_amplify(bits_a.slice(0, aligned), key_bits, result.leakage.hash_seed, entropy);
  result.status = status;
  if (status == AgreementStatus::ok) {
    result.bob = privacy_amplify(recovered.slice(0, aligned), key_bits, result.leakage.hash_seed, entropy);
  }
  return result;
}

std::optional<SharedKey> eavesdrop(std::span<const std::complex<double>> h_ea, const PublicLeakage& leakage,
                                   const QuantizerConfig& cfg, const bch::BchCode& code, std::size_t key_bits) {
  if (leakage.sketches.empty()) return std::nullopt;
  QuantizerConfig greedy = cfg;
  greedy.alpha_tune = 0.0;
  const auto mags = magnitudes(h_ea);
  const auto qe = quantize(mags, greedy);

  BitString guess;
  std::size_t e = 0;
  for (std::size_t idx : intersect(leakage.alice_indices, leakage.bob_indices)) {
    while (e < qe.kept_indices.size() && qe.kept_indices[e] < idx) ++e;
    const bool bit = e < qe.kept_indices.size() && qe.kept_indices[e] == idx && qe.bits[e];
    guess.push_back(bit);
  }
  const std::size_t n = code.params().n;
  guess.resize(leakage.sketches.size() * n);

  BitString recovered;
  for (std::size_t blk = 0; blk < leakage.sketches.size(); ++blk) {
    const auto rec = sketch_recover(guess.slice(blk * n, n), leakage.sketches[blk], code);
    if (!rec.ok()) return std::nullopt;
    recovered.append(rec.bits);
  }
  return privacy_amplify(recovered.slice(0, leakage.aligned_bits), key_bits, leakage.hash_seed);
}

double block_correlation(const BitString& a, const BitString& b) {
  if (a.size() != b.size() || a.empty()) throw ValidationError("block_correlation: need equal nonempty blocks");
  const double agree = static_cast<double>(a.size() - hamming_distance(a, b));
  return std::abs(2.0 * agree / static_cast<double>(a.size()) - 1.0);
}

std::vector<std::size_t> decorrelated_indices(std::span<const BitString> blocks, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) throw ValidationError("subcarrier_decorrelate: threshold must be in [0,1]");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!kept.empty() && block_correlation(blocks[kept.back()], blocks[i]) > threshold) continue;
    kept.push_back(i);
  }
  return kept;
}

std::vector<BitString> subcarrier_decorrelate(std::span<const BitString> blocks, double threshold) {
  std::vector<BitString> out;
  for (std::size_t i : decorrelated_indices(blocks, threshold)) out.push_back(blocks[i]);
  return out;
}

}  // namespace phydsss::extractor
