#include "phydsss/bch.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "phydsss/errors.hpp"

namespace phydsss::bch {

namespace {

constexpr std::uint32_t kFieldPolynomials[] = {
    0,       0,       0,
    0xB,      // m = 3:  x^3 + x + 1
    0x13,     // m = 4:  x^4 + x + 1
    0x25,     // m = 5:  x^5 + x^2 + 1
    0x43,     // m = 6:  x^6 + x + 1
    0x89,     // m = 7:  x^7 + x^3 + 1
    0x11D,    // m = 8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // m = 9:  x^9 + x^4 + 1
    0x409,    // m = 10: x^10 + x^3 + 1
    0x805,    // m = 11: x^11 + x^2 + 1
    0x1053,   // m = 12: x^12 + x^6 + x^4 + x + 1
    0x201B,   // m = 13: x^13 + x^4 + x^3 + x + 1
    0x4443,   // m = 14: x^14 + x^10 + x^6 + x + 1
    0x8003,   // m = 15: x^15 + x + 1
    0x1100B,  // m = 16: x^16 + x^12 + x^3 + x + 1
};

unsigned degree_for_length(unsigned n) {
  for (unsigned m = 3; m <= 16; ++m) {
    if (n == (1u << m) - 1) return m;
  }
  throw ParameterError("BCH: n = " + std::to_string(n) + " is not 2^m - 1 for m in 3..16");
}

}  // namespace

std::uint32_t field_polynomial(unsigned m) {
  if (m < 3 || m > 16) throw ParameterError("field_polynomial: m must be in 3..16");
  return kFieldPolynomials[m];
}

GaloisField::GaloisField(unsigned m)
    : m_(m), n_((1u << m) - 1), exp_(2 * static_cast<std::size_t>(n_)), log_(n_ + 1, 0) {
  const std::uint32_t poly = field_polynomial(m);
  std::uint32_t x = 1;
  for (unsigned i = 0; i < n_; ++i) {
    exp_[i] = x;
    if (i > 0 && x == 1) throw ParameterError("GaloisField: field polynomial is not primitive");
    log_[x] = i;
    x <<= 1;
    if (x & (1u << m)) x ^= poly;
  }
  if (x != 1) throw ParameterError("GaloisField: field polynomial is not primitive");
  for (unsigned i = n_; i < 2 * n_; ++i) exp_[i] = exp_[i - n_];
}

std::uint32_t GaloisField::alpha_pow(long long e) const {
  long long r = e % static_cast<long long>(n_);
  if (r < 0) r += n_;
  return exp_[static_cast<std::size_t>(r)];
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

std::uint32_t GaloisField::div(std::uint32_t a, std::uint32_t b) const {
  if (b == 0) throw DomainError("GaloisField: division by zero");
  if (a == 0) return 0;
  return exp_[log_[a] + n_ - log_[b]];
}

unsigned GaloisField::log(std::uint32_t a) const {
  if (a == 0) throw DomainError("GaloisField: log of zero");
  return log_[a];
}

BchCode::BchCode(BchParams params) : params_(params), field_(degree_for_length(params.n)) {
  const unsigned n = params.n;
  if (params.k == 0 || params.k >= n) throw ParameterError("BCH: need 0 < k < n");
  if (params.t == 0 || 2 * params.t >= n) throw ParameterError("BCH: need 1 <= t and 2t < n");

  // g(x) = lcm of the minimal polynomials of alpha^1 .. alpha^2t.
  std::vector<std::uint8_t> g{1};
  std::set<unsigned> covered;
  for (unsigned i = 1; i <= 2 * params.t; ++i) {
    if (covered.count(i)) continue;
    std::vector<unsigned> coset;
    unsigned c = i;
    do {
      coset.push_back(c);
      covered.insert(c);
      c = (2 * c) % n;
    } while (c != i);

    std::vector<std::uint32_t> minimal{1};
    for (unsigned e : coset) {
      const std::uint32_t root = field_.alpha_pow(e);
      std::vector<std::uint32_t> next(minimal.size() + 1, 0);
      for (std::size_t d = 0; d < minimal.size(); ++d) {
        next[d + 1] ^= minimal[d];
        next[d] ^= field_.mul(minimal[d], root);
      }
      minimal = std::move(next);
    }
    std::vector<std::uint8_t> product(g.size() + minimal.size() - 1, 0);
    for (std::size_t a = 0; a < g.size(); ++a) {
      if (!g[a]) continue;
      for (std::size_t b = 0; b < minimal.size(); ++b) {
        if (minimal[b] > 1) throw ParameterError("BCH: minimal polynomial not binary");
        product[a + b] ^= static_cast<std::uint8_t>(minimal[b]);
      }
    }
    g = std::move(product);
  }
  const std::size_t deg = g.size() - 1;
  if (deg != n - params.k) {
    throw ParameterError("BCH: (" + std::to_string(n) + "," + std::to_string(params.k) + ",t=" +
                         std::to_string(params.t) + ") unsupported; generator degree is " +
                         std::to_string(deg) + " so k must be " + std::to_string(n - deg));
  }
  generator_ = std::move(g);
}

void BchCode::check_length(const BitString& word, std::size_t expected, const char* what) const {
  if (word.size() != expected) {
    throw ValidationError(std::string("BCH ") + what + ": expected " + std::to_string(expected) +
                          " bits, got " + std::to_string(word.size()));
  }
}

BitString BchCode::encode(const BitString& message) const {
  check_length(message, params_.k, "encode");
  const std::size_t r = params_.n - params_.k;
  std::vector<std::uint8_t> reg(r, 0);
  for (std::size_t i = 0; i < params_.k; ++i) {
    const std::uint8_t feedback = static_cast<std::uint8_t>(message[i] ^ reg[r - 1]);
    for (std::size_t j = r - 1; j > 0; --j) {
      reg[j] = static_cast<std::uint8_t>(reg[j - 1] ^ (generator_[j] & feedback));
    }
    reg[0] = static_cast<std::uint8_t>(generator_[0] & feedback);
  }
  BitString out = message;
  out.resize(params_.n);
  for (std::size_t j = 0; j < r; ++j) out.set(params_.k + j, reg[r - 1 - j] != 0);
  return out;
}

std::vector<std::uint32_t> BchCode::syndromes(const BitString& word) const {
  check_length(word, params_.n, "syndromes");
  std::vector<std::uint32_t> s(2 * params_.t, 0);
  for (std::size_t i = 0; i < params_.n; ++i) {
    if (!word[i]) continue;
    const long long degree = static_cast<long long>(params_.n - 1 - i);
    for (unsigned j = 1; j <= 2 * params_.t; ++j) s[j - 1] ^= field_.alpha_pow(degree * j);
  }
  return s;
}

bool BchCode::is_codeword(const BitString& word) const {
  const auto s = syndromes(word);
  return std::all_of(s.begin(), s.end(), [](std::uint32_t v) { return v == 0; });
}

bool BchCode::divisible_by_generator(const BitString& word) const {
  check_length(word, params_.n, "divisibility");
  // Long division, coefficients indexed by degree.
  std::vector<std::uint8_t> rem(params_.n);
  for (std::size_t i = 0; i < params_.n; ++i) rem[params_.n - 1 - i] = word[i] ? 1 : 0;
  const std::size_t gdeg = generator_.size() - 1;
  for (std::size_t d = params_.n; d-- > gdeg;) {
    if (!rem[d]) continue;
    for (std::size_t j = 0; j <= gdeg; ++j) rem[d - gdeg + j] ^= generator_[j];
  }
  return std::all_of(rem.begin(), rem.end(), [](std::uint8_t v) { return v == 0; });
}

DecodeResult BchCode::decode(const BitString& received) const {
  check_length(received, params_.n, "decode");
  const auto s = syndromes(received);
  if (std::all_of(s.begin(), s.end(), [](std::uint32_t v) { return v == 0; })) {
    return {received, 0};
  }

  // Berlekamp-Massey for the error locator Lambda(x).
  std::vector<std::uint32_t> lambda{1}, prev{1};
  std::size_t len = 0;
  std::size_t shift = 1;
  std::uint32_t prev_disc = 1;
  for (std::size_t step = 0; step < s.size(); ++step) {
    std::uint32_t d = s[step];
    for (std::size_t i = 1; i <= len && i < lambda.size(); ++i) d ^= field_.mul(lambda[i], s[step - i]);
    if (d == 0) {
      ++shift;
      continue;
    }
    const std::uint32_t coef = field_.div(d, prev_disc);
    std::vector<std::uint32_t> updated = lambda;
    if (updated.size() < prev.size() + shift) updated.resize(prev.size() + shift, 0);
    for (std::size_t i = 0; i < prev.size(); ++i) updated[i + shift] ^= field_.mul(coef, prev[i]);
    if (2 * len <= step) {
      prev = lambda;
      len = step + 1 - len;
      prev_disc = d;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(updated);
  }
  while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
  if (len > params_.t || lambda.size() - 1 != len) return {std::nullopt, 0};

  // Chien search: error at degree p iff Lambda(alpha^-p) = 0.
  BitString corrected = received;
  std::size_t roots = 0;
  for (unsigned p = 0; p < params_.n; ++p) {
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      v ^= field_.mul(lambda[i], field_.alpha_pow(-static_cast<long long>(p) * static_cast<long long>(i)));
    }
    if (v == 0) {
      corrected.flip(params_.n - 1 - p);
      ++roots;
    }
  }
  if (roots != len || !is_codeword(corrected)) return {std::nullopt, 0};
  return {std::move(corrected), roots};
}

BitString BchCode::random_codeword(RngStream& rng) const { return encode(rng.bits(params_.k)); }

BitString BchCode::message_of(const BitString& codeword) const {
  check_length(codeword, params_.n, "message_of");
  return codeword.slice(0, params_.k);
}

void write_conformance(std::ostream& out, std::span<const ConformanceVector> vectors) {
  for (const auto& v : vectors) {
    out << v.params.n << ' ' << v.params.k << ' ' << v.params.t << ' ' << v.message.to_hex() << ' '
        << v.codeword.to_hex() << '\n';
  }
}

std::vector<ConformanceVector> read_conformance(std::istream& in) {
  std::vector<ConformanceVector> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    ConformanceVector v;
    std::string msg_hex, cw_hex;
    if (!(fields >> v.params.n >> v.params.k >> v.params.t >> msg_hex >> cw_hex)) {
      throw ValidationError("conformance line " + std::to_string(line_no) + ": expected `n k t message_hex codeword_hex`");
    }
    v.message = BitString::from_hex(msg_hex, v.params.k);
    v.codeword = BitString::from_hex(cw_hex, v.params.n);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<ConformanceVector> make_conformance(const BchCode& code, std::size_t count, RngStream& rng) {
  std::vector<ConformanceVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const BitString msg = rng.bits(code.params().k);
    out.push_back({code.params(), msg, code.encode(msg)});
  }
  return out;
}

}  // namespace phydsss::bch
