#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pine/dzk.hpp"
#include "pine/fiat_shamir.hpp"
#include "pine/norm.hpp"
#include "pine/random.hpp"
#include "pine/verdict.hpp"

namespace pine {

// Non-interactive proofs via the distributed Fiat-Shamir transform.
//
// Statistical variant, three challenge rounds:
//   round 1: pi = empty          -> r_1 expands to the ternary matrix Z
//   round 2: pi = message 2      -> r_2 expands to t batching coins
//   round 3: pi = message 4      -> r_3 expands to t evaluation points
// Differential variant, two rounds:
//   round 1: pi = range shares   -> r_1 expands to t batching coins
//   round 2: pi = message 3      -> r_2 expands to t evaluation points
//
// Wire format (little-endian):
//   "PINE" | u8 version | u8 variant | u32 len, statement | u8 slice count |
//   slices, each: u8 verifier | u32 len, input shares | u32 rounds |
//   per round: nu (32) | claimed peer hash r_{i,1-j} (32) | u32 len, pi_{i,j}

enum class Variant : std::uint8_t { kStatistical = 1, kDzk = 2 };

inline constexpr std::uint8_t kProofVersion = 1;

std::vector<std::uint8_t> encode_statement(const NormParams& p);
std::vector<std::uint8_t> encode_statement(const DzkParams& p);
// Throw FormatError on malformed bytes; parameters are re-derived and must be
// internally consistent.
NormParams decode_norm_statement(std::span<const std::uint8_t> in);
DzkParams decode_dzk_statement(std::span<const std::uint8_t> in);

struct NiRound {
  Digest nu{};
  Digest peer{};
  std::vector<std::uint8_t> msg;
};

struct NiSlice {
  int verifier = 0;
  std::vector<std::uint8_t> input;  // serialized ShareVector
  std::vector<NiRound> rounds;
};

struct NiProof {
  Variant variant = Variant::kStatistical;
  std::vector<std::uint8_t> statement;
  std::vector<NiSlice> slices;  // both, or just one verifier's

  const NiSlice& slice(int verifier) const;
  NiProof only(int verifier) const;
};

std::vector<std::uint8_t> serialize(const NiProof& p);
NiProof parse_ni_proof(std::span<const std::uint8_t> in);

struct NiProveInfo {
  unsigned attempts = 0;
};

// Throws std::runtime_error if every attempt aborts.
NiProof ni_prove(const NormParams& p, std::span<const Fe> x, Rng& rng, const FsConfig& cfg = {},
                 NiProveInfo* info = nullptr, const ProverHooks& hooks = {});
NiProof ni_prove(const DzkParams& p, std::span<const Fe> x, Rng& rng, const FsConfig& cfg = {},
                 const DzkHooks& hooks = {});

// What a verifier sends its peer: its status, its own view hashes r_{i,j},
// and the protocol exchange.
struct NiVerifierMessage {
  int verifier = 0;
  RejectCause status = RejectCause::kNone;
  std::vector<Digest> hashes;
  std::vector<std::uint8_t> exchange;
};
std::vector<std::uint8_t> serialize(const NiVerifierMessage& m);
NiVerifierMessage parse_verifier_message(std::span<const std::uint8_t> in);

// Local phase: replay the challenges from this verifier's slice and compute
// its exchange. Never throws on bad proof bytes; the status records why.
NiVerifierMessage ni_verify_local(const NiProof& proof, int verifier);
// Final phase: compare the peer's hashes with the ones claimed in this
// verifier's slice, then run the protocol decision.
Verdict ni_verify_finish(const NiProof& proof, int verifier, const NiVerifierMessage& own,
                         const NiVerifierMessage& peer);
// Both verifiers in-process, from the serialized proof.
Verdict ni_verify(std::span<const std::uint8_t> proof_bytes);

// The challenges a verifier derives (exposed for cross-checks with the
// interactive engine).
struct StatisticalChallenges {
  WraparoundChallenge z;
  std::vector<Fe> rcs;
  std::vector<Fe> rhos;
};
StatisticalChallenges expand_statistical(const NormParams& p, const std::array<Digest, 3>& rounds);

}  // namespace pine
