#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "pine/field.hpp"
#include "pine/random.hpp"
#include "pine/sharing.hpp"

namespace pine {

// Variables are X'_0..X'_n with X'_0 = 1; a constraint asserts
//   sum c * X'_i * X'_j  +  sum ternary products  =  target.
struct QuadTerm {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Fe c;
};

// c * X'_var * sum_t data[offset + t] * X'_{first + t}  for t < len, with
// entries of data in {-1, 0, 1}. This is a compact spelling of len ordinary
// terms, used for the wraparound challenge rows.
struct TernaryTerm {
  std::uint32_t var = 0;
  Fe c;
  std::shared_ptr<const std::vector<std::int8_t>> data;
  std::size_t offset = 0;
  std::uint32_t first = 1;
  std::uint32_t len = 0;
};

struct QuadraticConstraint {
  std::vector<QuadTerm> terms;
  std::vector<TernaryTerm> ternary;
  Fe target;
};

struct ConstraintSystem {
  std::size_t n = 0;  // variables, excluding the constant X'_0
  std::vector<QuadraticConstraint> constraints;

  std::size_t m() const { return constraints.size(); }
  // Throws std::invalid_argument on out-of-range indices.
  void validate() const;
};

// Plaintext evaluation; xp includes X'_0 = 1 at index 0.
Fe evaluate(const Field& f, const QuadraticConstraint& c, std::span<const Fe> xp);
bool all_satisfied(const Field& f, const ConstraintSystem& sys, std::span<const Fe> xp);

// bit * bit - bit = 0
QuadraticConstraint bit_constraint(const Field& f, std::uint32_t var);

// The random linear combination sum_k rc^(k-1) (C_k - a_k), kept as an
// unmerged entry list: X'^T A X' = b iff the combination vanishes.
struct CombinedForm {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Fe c;
  };
  std::size_t n = 0;
  std::vector<Entry> entries;
  std::vector<TernaryTerm> ternary;
  Fe b;
};

CombinedForm combine_constraints(const Field& f, const ConstraintSystem& sys, Fe rc);

// Z = (A X')_{1..n} and the affine remainder A_00 + sum_j A_0j X_j, as
// verifier-local shares. Passing a plaintext vector as verifier 0 yields the
// plaintext values. Then X'^T A X' = <X, Z> + affine.
struct AppliedShares {
  ShareVector z;
  Share affine;
};
AppliedShares local_matrix_apply(const Field& f, const CombinedForm& a, const ShareVector& x);

// ---------------------------------------------------------------------------
// Inner-product proof. u and v are split into L blocks of L entries
// (zero-padded to L^2). Block j defines polynomials f_j, g_j of degree <= L
// through the evaluation points 0..L: point 0 carries a fresh random value,
// points 1..L carry the block. h = sum_j f_j g_j has degree <= 2L and
// sum_{t=1..L} h(t) = <u, v>.

std::uint32_t block_count(std::size_t n);  // ceil(sqrt(n)), at least 1

struct InnerProductProof {
  std::uint32_t L = 0;
  std::vector<Fe> f_ext;  // L values f_j(0)
  std::vector<Fe> g_ext;  // L values g_j(0)
  std::vector<Fe> h;      // 2L+1 coefficients, low degree first

  std::size_t element_count() const { return f_ext.size() + g_ext.size() + h.size(); }
};

// The 2L+2 values one verifier sends to the other.
struct VerifierExchange {
  std::vector<Fe> f_rho;
  std::vector<Fe> g_rho;
  Fe h_rho;
  Fe lin;  // share of sum_t h(t) + offset; must reconstruct to 0

  std::size_t element_count() const { return f_rho.size() + g_rho.size() + 2; }
};

// Plaintext proof (before sharing).
InnerProductProof prove_inner_product_plain(const Field& f, std::span<const Fe> u, std::span<const Fe> v,
                                            Rng& rng);
std::array<InnerProductProof, 2> share_proof(const Field& f, const InnerProductProof& plain, Rng& rng);

// Evaluation challenge, uniform over GF(q) minus the points 0..L.
Fe sample_rho(const Field& f, std::uint32_t L, Rng& rng);

// offset_share is this verifier's share of the value that, added to
// sum_t h(t), must give zero (for a public target b: -b at verifier 0).
VerifierExchange inner_product_exchange(const Field& f, int verifier, const InnerProductProof& proof,
                                        std::span<const Fe> u_share, std::span<const Fe> v_share,
                                        Fe offset_share, Fe rho);
bool inner_product_decide(const Field& f, const VerifierExchange& e0, const VerifierExchange& e1);

// Cheating-prover helpers. gap is the amount by which sum_t h(t) must move
// for the linear check to pass.
// Adds gap/L to h's constant term; caught for every rho.
void shift_constant(const Field& f, InnerProductProof& plain, Fe gap);
// Adds c * prod_{i<2L}(x - s_i) with random distinct s_i outside 0..L;
// accepted exactly when rho lands on one of the s_i.
void plant_roots(const Field& f, InnerProductProof& plain, Fe gap, Rng& rng);

using InnerProductCheat = std::function<void(const Field&, InnerProductProof& plain, Fe gap, Rng&)>;

// ---------------------------------------------------------------------------
// One repetition of the quadratic-constraints protocol.

// x_plain holds X_1..X_n. If cheat is set it is applied to the plaintext
// proof; the honest prover never calls it.
std::array<InnerProductProof, 2> prove_quadratic(const Field& f, const ConstraintSystem& sys,
                                                 std::span<const Fe> x_plain, Fe rc, Rng& rng,
                                                 const InnerProductCheat& cheat = {});

// Throws std::invalid_argument on a malformed proof shape.
VerifierExchange quadratic_exchange(const Field& f, const ConstraintSystem& sys, const ShareVector& x_share,
                                    Fe rc, const InnerProductProof& proof, Fe rho);

bool run_quadratic_protocol(const Field& f, const ConstraintSystem& sys, std::span<const Fe> x_plain,
                            const std::array<ShareVector, 2>& x_shares, unsigned t, Rng& prover_rng,
                            Rng& coins, const InnerProductCheat& cheat = {});

// (2 sqrt(n) / (q - sqrt(n)) + m/q)^t
double quadratic_soundness_bound(double n, double m, double q, unsigned t);

// Lagrange basis values lambda_s(x), s = 0..points-1, over the points
// 0..points-1; x must lie outside that set.
std::vector<Fe> lagrange_basis_at(const Field& f, std::uint32_t points, Fe x);
// Monomial coefficients of the polynomial through (s, y_s), s = 0..y.size()-1.
std::vector<Fe> interpolate_coefficients(const Field& f, std::span<const Fe> y);
Fe horner(const Field& f, std::span<const Fe> coeffs, Fe x);

}  // namespace pine
