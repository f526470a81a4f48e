#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "pine/field.hpp"
#include "pine/wraparound.hpp"

namespace pine {

using Digest = std::array<std::uint8_t, 32>;

// H is SHA-256, so kappa is fixed at 256 bits; blinds are kappa bits too.
struct FsConfig {
  unsigned kappa = 256;
  unsigned max_attempts = 8;  // fresh-salt retries after a prover abort
};

// Extra soundness bits demanded of the interactive protocol when it is made
// non-interactive, as slack for the prover's offline hashing.
inline constexpr double kFsMarginBits = 14;

Digest sha256(std::span<const std::uint8_t> data);

// r_{i,j} = H("PINE-FS-v1", i, j, statement, H(x_j), nu_{i,j}, r_{i-1}, pi_{i,j}),
// every variable-length field prefixed by its u64 length. The statement binds
// the public parameters; r_0 is all zeros.
Digest view_hash(std::uint32_t round, int verifier, std::span<const std::uint8_t> statement, const Digest& input_digest,
                 const Digest& nu, const Digest& prev, std::span<const std::uint8_t> prover_msg);

// r_i = H("PINE-FS-v1", i, 0xff, r_{i,0}, r_{i,1})
Digest combine_round(std::uint32_t round, const Digest& r0, const Digest& r1);

// Both hashes and the combined challenge for one round, from both views.
struct RoundChallenge {
  Digest r0;
  Digest r1;
  Digest combined;
};
RoundChallenge derive_round_challenge(std::uint32_t round, std::span<const std::uint8_t> statement,
                                      const std::array<Digest, 2>& input_digests,
                                      const std::array<Digest, 2>& nus, const Digest& prev,
                                      std::span<const std::uint8_t> msg0, std::span<const std::uint8_t> msg1);

// Expands a round challenge into the randomness it stands for. Block k of the
// stream is SHA-256("PINE-XOF" || seed || u64 len || label || u64 k); blocks
// are consumed in order.
class ChallengeStream {
 public:
  ChallengeStream(const Digest& seed, std::string_view label);

  void bytes(std::span<std::uint8_t> out);
  // Rejection sampling: take byte_length(q) little-endian bytes, clear the
  // bits above bit_length(q), retry if the value is >= q.
  Fe field_element(const Field& f);
  // The same, restricted to GF(q) minus {0..L}: uniform in [L+1, q).
  Fe rho(const Field& f, std::uint32_t L);
  // Four ternary entries per byte, 2-bit mapping 00/11 -> 0, 01 -> 1, 10 -> -1.
  WraparoundChallenge ternary(std::size_t r, std::size_t d);

 private:
  void refill();

  Digest seed_;
  std::vector<std::uint8_t> label_;
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t pos_ = sizeof(Digest);
};

}  // namespace pine
