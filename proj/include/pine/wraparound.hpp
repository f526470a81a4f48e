#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pine/field.hpp"
#include "pine/random.hpp"
#include "pine/sharing.hpp"

namespace pine {

// Parameters of r parallel randomized dot-product tests.
//
// Every test checks Y = <Z_k, X> against the window [lo, hi] where
// W = 2^b is the smallest power of two with W >= 2*ceil(alpha0*sqrt(B)) + 1,
// lo = -(W/2 - 1) and hi = W/2. The window therefore contains
// [-ceil(alpha0*sqrt(B)), ceil(alpha0*sqrt(B))], so the honest success rate
// is governed by alpha_hat = (W/2 - 1)/sqrt(B) >= alpha0.
struct WraparoundParams {
  std::size_t d = 0;
  std::uint64_t B = 0;
  std::size_t r = 0;
  std::size_t tau_r = 0;  // required successes, tau * r
  double eta = 0;         // nominal per-repetition failure probability

  double alpha0 = 0;     // sqrt(ln(2/eta))
  double A = 0;          // alpha0 * sqrt(B)
  unsigned b = 0;        // bits per repetition
  i128 lo = 0;           // -(W/2 - 1)
  i128 hi = 0;           // W/2
  double alpha_hat = 0;  // min(-lo, hi) / sqrt(B)
  double eta_hat = 0;    // 2 exp(-alpha_hat^2), the completeness input

  double tau() const { return r == 0 ? 1.0 : static_cast<double>(tau_r) / static_cast<double>(r); }
  std::uint64_t window_width() const { return std::uint64_t{1} << b; }
};

// Throws std::invalid_argument for eta outside (0, 1], B == 0, or
// tau_r outside (r/2, r] (tau_r = r = 0 is allowed).
WraparoundParams make_wraparound_params(std::size_t d, std::uint64_t B, std::size_t r, std::size_t tau_r,
                                        double eta);

// Field condition of the wraparound lemma, q >= max{B ln(2/eta)/4000,
// 2600 sqrt(B ln(2/eta)), 2r}, together with the range-check precondition
// q > 3(W - 1) + 2 that the power-of-two window needs.
bool wraparound_field_ok(const Field& f, const WraparoundParams& p);

// r x d matrix with entries in {-1, 0, 1}, row-major. Shared so that
// constraints can refer to its rows without copying.
struct WraparoundChallenge {
  std::size_t r = 0;
  std::size_t d = 0;
  std::shared_ptr<const std::vector<std::int8_t>> z;

  std::int8_t at(std::size_t k, std::size_t i) const { return (*z)[k * d + i]; }
};

// Two bits per entry: 00 -> 0, 01 -> +1, 10 -> -1, 11 -> 0 when sampling,
// which gives exactly P(-1) = P(+1) = 1/4.
std::int8_t ternary_from_bits(unsigned two_bits);
WraparoundChallenge sample_challenge(std::size_t r, std::size_t d, Rng& rng);
// Same mapping over an arbitrary byte stream (four entries per byte).
WraparoundChallenge challenge_from_bytes(std::size_t r, std::size_t d, std::span<const std::uint8_t> bytes);

// Transmission encoding: 00, 01, 10 as above; 11 is rejected on decode.
std::vector<std::uint8_t> encode_challenge(const WraparoundChallenge& z);
WraparoundChallenge decode_challenge(std::size_t r, std::size_t d, std::span<const std::uint8_t> bytes);

// Prover-side dot products Y_k = <Z_k, X> mod q, as signed representatives.
std::vector<i128> dot_products(const Field& f, const WraparoundChallenge& z, std::span<const Fe> x);

// Plaintext witness: mask bits and, per repetition, b bits of Y_k - lo.
struct WraparoundWitness {
  std::vector<std::uint8_t> g;  // r mask bits
  std::vector<std::uint8_t> v;  // r * b bits, repetition-major
  std::size_t failures = 0;
};

// Honest prover. Repetitions with Y_k outside the window get g_k = 0 and
// bits encoding W - 1; further g_k are zeroed at random positions until
// exactly r - tau_r are zero. Returns nullopt (abort) when more than
// r - tau_r repetitions fail.
std::optional<WraparoundWitness> prove_wraparound(const Field& f, const WraparoundParams& p,
                                                  const WraparoundChallenge& z, std::span<const Fe> x, Rng& rng);
// The same from precomputed dot products.
std::optional<WraparoundWitness> wraparound_witness(const WraparoundParams& p, std::span<const i128> y, Rng& rng);

struct WraparoundShare {
  int verifier = 0;
  std::vector<Fe> g;
  std::vector<Fe> v;
};
std::array<WraparoundShare, 2> share_wraparound(const Field& f, const WraparoundWitness& w, Rng& rng);

// This verifier's shares of S_k = <Z_k, X> - lo - sum_j 2^j v_{k,j}.
std::vector<Fe> compute_sk_share(const Field& f, const ShareVector& x, const WraparoundChallenge& z,
                                 const WraparoundShare& w, const WraparoundParams& p);

Share g_sum_share(const Field& f, const WraparoundShare& w);
// Accept iff sum_k g_k = tau_r.
bool success_count_check(const Field& f, const Share& g0, const Share& g1, const WraparoundParams& p);

// The simulator's view for one verifier: uniform shares of the right shape.
WraparoundShare simulate_wraparound_share(const Field& f, const WraparoundParams& p, int verifier, Rng& rng);

}  // namespace pine
