#include "phydsss/crypto.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace phydsss::crypto {

namespace {

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};
struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};

void check(int rc, const char* what) {
  if (rc != 1) throw std::runtime_error(what);
}

}  // namespace

struct Sha256::Impl {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx{EVP_MD_CTX_new()};
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  if (!impl_->ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  check(EVP_DigestInit_ex(impl_->ctx.get(), EVP_sha256(), nullptr), "SHA-256 init failed");
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
  check(EVP_DigestUpdate(impl_->ctx.get(), data.data(), data.size()), "SHA-256 update failed");
  return *this;
}

Digest Sha256::finish() {
  Digest out{};
  unsigned int len = 0;
  check(EVP_DigestFinal_ex(impl_->ctx.get(), out.data(), &len), "SHA-256 final failed");
  check(EVP_DigestInit_ex(impl_->ctx.get(), EVP_sha256(), nullptr), "SHA-256 init failed");
  return out;
}

Digest sha256(std::span<const std::uint8_t> data) {
  Sha256 h;
  h.update(data);
  return h.finish();
}

Digest sha256d(std::span<const std::uint8_t> data) {
  const Digest first = sha256(data);
  return sha256(first);
}

struct Aes256::Impl {
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter> ctx{EVP_CIPHER_CTX_new()};
};

Aes256::Aes256(const Key256& key) : impl_(std::make_unique<Impl>()) {
  if (!impl_->ctx) throw std::runtime_error("EVP_CIPHER_CTX_new failed");
  check(EVP_EncryptInit_ex(impl_->ctx.get(), EVP_aes_256_ecb(), nullptr, key.data(), nullptr),
        "AES-256 init failed");
  EVP_CIPHER_CTX_set_padding(impl_->ctx.get(), 0);
}

Aes256::~Aes256() = default;
Aes256::Aes256(Aes256&&) noexcept = default;
Aes256& Aes256::operator=(Aes256&&) noexcept = default;

Block Aes256::encrypt(const Block& plaintext) const {
  Block out{};
  int len = 0;
  check(EVP_EncryptUpdate(impl_->ctx.get(), out.data(), &len, plaintext.data(),
                          static_cast<int>(plaintext.size())),
        "AES-256 encrypt failed");
  if (len != static_cast<int>(out.size())) throw std::runtime_error("AES-256 short block");
  return out;
}

}  // namespace phydsss::crypto
