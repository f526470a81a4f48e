#include "pine/random.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <openssl/sha.h>

#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>

namespace pine {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint8_t in[16] = {'p', 'i', 'n', 'e', '-', 's', 'e', 'e', 'd'};
  for (int i = 0; i < 8; ++i) in[8 + i] = static_cast<std::uint8_t>(seed >> (8 * i));
  SHA256(in, sizeof(in), key_.data());
}

Rng Rng::from_key(std::span<const std::uint8_t, 32> key) {
  Rng r;
  std::memcpy(r.key_.data(), key.data(), 32);
  return r;
}

Rng Rng::from_os() {
  Rng r;
  if (RAND_bytes(r.key_.data(), static_cast<int>(r.key_.size())) != 1) {
    throw std::runtime_error("OS entropy unavailable");
  }
  return r;
}

Rng Rng::derive(std::string_view label) const {
  std::string buf(reinterpret_cast<const char*>(key_.data()), key_.size());
  buf.append(label);
  Rng r;
  SHA256(reinterpret_cast<const unsigned char*>(buf.data()), buf.size(), r.key_.data());
  return r;
}

void Rng::refill() {
  std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter> ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_CIPHER_CTX_new failed");
  // OpenSSL's ChaCha20 IV: 32-bit little-endian block counter, then 96-bit nonce.
  std::uint8_t iv[16] = {};
  for (int i = 0; i < 8; ++i) iv[4 + i] = static_cast<std::uint8_t>(block_ >> (8 * i));
  ++block_;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_chacha20(), nullptr, key_.data(), iv) != 1) {
    throw std::runtime_error("ChaCha20 init failed");
  }
  static const std::uint8_t zeros[sizeof(buf_)] = {};
  int len = 0;
  if (EVP_EncryptUpdate(ctx.get(), buf_.data(), &len, zeros, static_cast<int>(sizeof(zeros))) != 1) {
    throw std::runtime_error("ChaCha20 keystream failed");
  }
  pos_ = 0;
}

Rng::result_type Rng::operator()() {
  if (pos_ + 8 > buf_.size()) refill();
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf_[pos_ + i];
  pos_ += 8;
  return v;
}

void Rng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (pos_ >= buf_.size()) refill();
    b = buf_[pos_++];
  }
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = max() - (max() % n + 1) % n;  // accept v <= limit
  for (;;) {
    const std::uint64_t v = (*this)();
    if (v <= limit) return v % n;
  }
}

u128 Rng::below(u128 n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  if ((n >> 64) == 0) return below(static_cast<std::uint64_t>(n));
  // Mask to the bit length of n - 1 and reject; expected < 2 draws.
  unsigned bits = ceil_log2(n);
  const u128 mask = bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
  for (;;) {
    const u128 v = ((static_cast<u128>((*this)()) << 64) | (*this)()) & mask;
    if (v < n) return v;
  }
}

bool Rng::bit() { return ((*this)() & 1) != 0; }

double Rng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

}  // namespace pine
