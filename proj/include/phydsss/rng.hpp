#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include "phydsss/bits.hpp"

namespace phydsss {

/// Deterministic random stream. The engine is mt19937_64; all derived
/// distributions are implemented here (not via <random> distributions) so
/// draws are identical across standard library implementations.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Box-Muller).
  double normal();
  /// Circular complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance);
  double exponential(double mean = 1.0);
  bool bit() { return (engine_() >> 63) != 0; }
  /// Uniform +1 / -1.
  int sign() { return bit() ? -1 : 1; }
  BitString bits(std::size_t count);
  std::vector<std::uint8_t> bytes(std::size_t count);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// 64-bit stream seed from (master seed, index, purpose) via SHA-256, so
/// streams for different trials and purposes are independent of run order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index, std::string_view purpose);

inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index,
                               std::string_view purpose) {
  return RngStream(derive_seed(master_seed, index, purpose));
}

}  // namespace phydsss
