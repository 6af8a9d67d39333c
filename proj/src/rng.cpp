#include "phydsss/rng.hpp"

#include <cmath>
#include <numbers>

#include "phydsss/crypto.hpp"
#include "phydsss/errors.hpp"

namespace phydsss {

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw ValidationError("RngStream::below: bound must be positive");
  // Rejection sampling removes modulo bias.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % bound;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::complex<double> RngStream::complex_normal(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = normal();
  const double im = normal();
  return {s * re, s * im};
}

double RngStream::exponential(double mean) {
  double u = uniform();
  while (u <= 0.0) u = uniform();
  return -mean * std::log(u);
}

BitString RngStream::bits(std::size_t count) {
  std::vector<std::uint8_t> v(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = engine_();
    v[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1);
  }
  return BitString(std::move(v));
}

std::vector<std::uint8_t> RngStream::bytes(std::size_t count) {
  std::vector<std::uint8_t> v(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 8 == 0) word = engine_();
    v[i] = static_cast<std::uint8_t>(word >> (56 - 8 * (i % 8)));
  }
  return v;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index, std::string_view purpose) {
  crypto::Sha256 h;
  static constexpr std::string_view kDomain = "phydsss/stream/v1";
  h.update({reinterpret_cast<const std::uint8_t*>(kDomain.data()), kDomain.size()});
  std::uint8_t buf[16];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<std::uint8_t>(master_seed >> (56 - 8 * i));
    buf[8 + i] = static_cast<std::uint8_t>(index >> (56 - 8 * i));
  }
  h.update(buf);
  h.update({reinterpret_cast<const std::uint8_t*>(purpose.data()), purpose.size()});
  const auto d = h.finish();
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | d[static_cast<std::size_t>(i)];
  return seed;
}

}  // namespace phydsss
