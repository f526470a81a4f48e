#include "pine/fiat_shamir.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <memory>
#include <stdexcept>

namespace pine {

namespace {

constexpr std::string_view kFsTag = "PINE-FS-v1";
constexpr std::string_view kXofTag = "PINE-XOF";

class Hasher {
 public:
  Hasher() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw std::runtime_error("SHA-256 initialisation failed");
    }
  }

  void raw(const void* data, std::size_t len) {
    if (len > 0 && EVP_DigestUpdate(ctx_.get(), data, len) != 1) throw std::runtime_error("SHA-256 update failed");
  }
  void u8(std::uint8_t v) { raw(&v, 1); }
  void u32(std::uint32_t v) {
    std::uint8_t b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    raw(b, 4);
  }
  void u64(std::uint64_t v) {
    std::uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
    raw(b, 8);
  }
  void tag(std::string_view s) { raw(s.data(), s.size()); }
  void var(std::span<const std::uint8_t> b) {
    u64(b.size());
    raw(b.data(), b.size());
  }
  void digest(const Digest& d) { raw(d.data(), d.size()); }

  Digest finish() {
    Digest out;
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), out.data(), &len) != 1 || len != out.size()) {
      throw std::runtime_error("SHA-256 finalisation failed");
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  Hasher h;
  h.raw(data.data(), data.size());
  return h.finish();
}

Digest view_hash(std::uint32_t round, int verifier, std::span<const std::uint8_t> statement, const Digest& input_digest,
                 const Digest& nu, const Digest& prev, std::span<const std::uint8_t> prover_msg) {
  if (verifier != 0 && verifier != 1) throw std::invalid_argument("verifier index must be 0 or 1");
  Hasher h;
  h.tag(kFsTag);
  h.u32(round);
  h.u8(static_cast<std::uint8_t>(verifier));
  h.var(statement);
  h.digest(input_digest);
  h.digest(nu);
  h.digest(prev);
  h.var(prover_msg);
  return h.finish();
}

Digest combine_round(std::uint32_t round, const Digest& r0, const Digest& r1) {
  Hasher h;
  h.tag(kFsTag);
  h.u32(round);
  h.u8(0xff);
  h.digest(r0);
  h.digest(r1);
  return h.finish();
}

RoundChallenge derive_round_challenge(std::uint32_t round, std::span<const std::uint8_t> statement,
                                      const std::array<Digest, 2>& input_digests,
                                      const std::array<Digest, 2>& nus, const Digest& prev,
                                      std::span<const std::uint8_t> msg0, std::span<const std::uint8_t> msg1) {
  RoundChallenge c;
  c.r0 = view_hash(round, 0, statement, input_digests[0], nus[0], prev, msg0);
  c.r1 = view_hash(round, 1, statement, input_digests[1], nus[1], prev, msg1);
  c.combined = combine_round(round, c.r0, c.r1);
  return c;
}

ChallengeStream::ChallengeStream(const Digest& seed, std::string_view label)
    : seed_(seed), label_(label.begin(), label.end()) {}

void ChallengeStream::refill() {
  Hasher h;
  h.tag(kXofTag);
  h.digest(seed_);
  h.var(label_);
  h.u64(counter_++);
  block_ = h.finish();
  pos_ = 0;
}

void ChallengeStream::bytes(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == block_.size()) refill();
    const std::size_t take = std::min(out.size() - done, block_.size() - pos_);
    std::memcpy(out.data() + done, block_.data() + pos_, take);
    pos_ += take;
    done += take;
  }
}

Fe ChallengeStream::field_element(const Field& f) {
  const std::size_t len = f.byte_length();
  const unsigned bits = f.bit_length();
  const u128 mask = bits >= 128 ? ~u128{0} : (u128{1} << bits) - 1;
  std::uint8_t buf[16];
  for (;;) {
    bytes(std::span<std::uint8_t>(buf, len));
    u128 v = 0;
    for (std::size_t i = 0; i < len; ++i) v |= static_cast<u128>(buf[i]) << (8 * i);
    v &= mask;
    if (v < f.modulus()) return Fe{v};
  }
}

Fe ChallengeStream::rho(const Field& f, std::uint32_t L) {
  if (f.modulus() <= u128{L} + 1) throw std::invalid_argument("field too small for the evaluation domain");
  for (;;) {
    const Fe x = field_element(f);
    if (x.v > L) return x;
  }
}

WraparoundChallenge ChallengeStream::ternary(std::size_t r, std::size_t d) {
  std::vector<std::uint8_t> buf((r * d + 3) / 4);
  bytes(buf);
  return challenge_from_bytes(r, d, buf);
}

}  // namespace pine
