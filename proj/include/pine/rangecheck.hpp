#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pine/field.hpp"
#include "pine/quadratic.hpp"
#include "pine/random.hpp"
#include "pine/sharing.hpp"

namespace pine {

// Claim: sum_i coeffs_i * Q_i lies in [lo, hi] modulo q.
struct RangeClaim {
  std::vector<Fe> coeffs;
  i128 lo = 0;
  i128 hi = 0;
};

struct RangeLayout {
  unsigned b = 0;     // ceil(log2(hi - lo + 1))
  bool pow2 = false;  // hi - lo + 1 is a power of two: only V is sent
};

// Throws std::invalid_argument if lo > hi.
RangeLayout range_layout(i128 lo, i128 hi);
// Throws std::invalid_argument unless q > 3(hi - lo) + 2.
void validate_claim(const Field& f, const RangeClaim& claim);

// Prover-side bits of V = value - lo and U = hi - value. Values outside the
// range are reduced into b bits; the resulting proof fails downstream.
struct RangeWitness {
  std::vector<std::uint8_t> v;
  std::vector<std::uint8_t> u;  // empty in power-of-two mode
};
RangeWitness range_witness(const Field& f, Fe value, i128 lo, i128 hi);

struct RangeProofShare {
  int verifier = 0;
  bool pow2 = false;
  unsigned b = 0;
  std::vector<Fe> v;
  std::vector<Fe> u;
};

std::array<RangeProofShare, 2> share_range_witness(const Field& f, const RangeWitness& w, bool pow2, Rng& rng);
std::array<RangeProofShare, 2> prove_range(const Field& f, std::span<const Fe> q_values, const RangeClaim& claim,
                                           Rng& rng);

// This verifier's share of sum_j v_j 2^j + sum_j u_j 2^j.
Share range_linear_share(const Field& f, const RangeProofShare& s);
// Accept iff the reconstructed weighted sums equal hi - lo; vacuous in
// power-of-two mode.
bool verify_range_linear(const Field& f, const RangeProofShare& s0, const RangeProofShare& s1,
                         const RangeClaim& claim);

// What remains to be proven after the linear check: the relation
// sum_i coeffs_i Q_i - sum_j 2^j v_j = lo, and bit-ness of every v_j, u_j.
// Q_i, v_j, u_j live at the given variable indices.
struct RangeResidual {
  QuadraticConstraint relation;
  std::vector<QuadraticConstraint> bitness;
};
RangeResidual residual_constraints(const Field& f, const RangeClaim& claim, std::span<const std::uint32_t> q_vars,
                                   std::uint32_t v_base, std::uint32_t u_base);

// One verifier's view as produced by the simulator: uniform shares of the
// right shape.
RangeProofShare simulate_range_share(const Field& f, const RangeClaim& claim, int verifier, Rng& rng);

// Mode byte, b (u32), then v shares followed by u shares.
std::vector<std::uint8_t> serialize(const Field& f, const RangeProofShare& s);
RangeProofShare deserialize_range_share(const Field& f, int verifier, std::span<const std::uint8_t> in);

Fe pow2_fe(const Field& f, unsigned j);

}  // namespace pine
