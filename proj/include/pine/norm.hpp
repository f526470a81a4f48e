#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pine/field.hpp"
#include "pine/quadratic.hpp"
#include "pine/random.hpp"
#include "pine/rangecheck.hpp"
#include "pine/sharing.hpp"
#include "pine/verdict.hpp"
#include "pine/wire.hpp"
#include "pine/wraparound.hpp"

namespace pine {

// eta = 2^-91.33, which puts alpha_hat at 7.99996948 for B = 2^30.
inline constexpr double kDefaultEtaLog2 = -91.33;

struct NormParams {
  Field field = Field::f64();
  std::size_t d = 0;
  std::uint64_t B = 0;
  std::size_t r = 0;
  std::size_t tau_r = 0;
  unsigned t = 1;
  double eta = 0;

  WraparoundParams wrap;
  unsigned b_sq = 0;     // b' = ceil(log2(B + 1))
  bool sq_pow2 = false;  // B + 1 is a power of two

  unsigned log_q() const { return field.bit_length(); }
};

// Builds parameters without searching. With check_field set, throws
// std::invalid_argument unless theorem_field_ok() holds; otherwise only the
// range-check preconditions (q > 3B + 2 and q > 3(W - 1) + 2) are required.
NormParams make_norm_params(const Field& f, std::size_t d, std::uint64_t B, std::size_t r, std::size_t tau_r,
                            unsigned t, double eta, bool check_field = true);

// q >= max{81 B ln(2/eta), B ln(2/eta)/4000, 2600 sqrt(B ln(2/eta)), 1000, 3r}
// plus the window's range-check precondition.
bool theorem_field_ok(const NormParams& p);
// The smallest modulus theorem_field_ok() admits (as a double).
double theorem_q_min(const NormParams& p);

enum class SoundnessModel {
  kTheorem,  // quadratic term with n_eff = d + log q (r+2)/2, m_eff = log q (r+2)/2
  kExact,    // quadratic term with this implementation's n, m and L = ceil(sqrt(n))
};

struct SelectOptions {
  double eta = 0;  // 0 means 2^kDefaultEtaLog2
  SoundnessModel model = SoundnessModel::kTheorem;
  unsigned max_t = 8;
  std::size_t max_r = 2048;
  double fs_margin_bits = 0;  // extra soundness bits for the non-interactive variant
};

// Minimises prover communication subject to soundness <= rho and
// completeness error <= delta. Throws InfeasibleParams naming the violated
// constraint when nothing qualifies.
NormParams select_params(std::size_t d, std::uint64_t B, const Field& f, double rho, double delta,
                         const SelectOptions& opt = {});

// err_sound(r, tau r) + quadratic term^t.
double soundness_error(const NormParams& p, SoundnessModel model = SoundnessModel::kTheorem);
// The printed soundness clause, with the Chernoff bound exp(-2(tau-1/2)^2 r)
// in place of the exact binomial tail.
double theorem_soundness_bound(const NormParams& p);
// err_complete(r, tau r, eta_hat).
double completeness_error(const NormParams& p);

// Variable layout (1-based; index 0 is the constant 1):
//   X_1..X_d | g_1..g_r | v_{k,j} (r*b, repetition-major) | v'_j | u'_j
struct VarLayout {
  std::uint32_t x = 1;
  std::uint32_t g = 0;
  std::uint32_t v = 0;
  std::uint32_t vp = 0;
  std::uint32_t up = 0;
  std::size_t n = 0;
};
VarLayout var_layout(const NormParams& p);

struct ConstraintCatalog {
  std::size_t n_vars = 0;
  std::size_t m_constraints = 0;
  // Counting formulas from the composed protocol's analysis:
  // m <= 2 ceil(log2(4 sqrt(B ln(2/eta)) + 2)) (r + 2), n = d + that term.
  double m_formula = 0;
  double n_formula = 0;
};
ConstraintCatalog constraint_catalog(const NormParams& p);

// The batch proven in messages 3-4: squared norm equals its bit recomposition,
// g_k * S_k = 0 for every repetition, and bit-ness of every bit variable.
ConstraintSystem build_constraints(const NormParams& p, const WraparoundChallenge& z);

// Per-verifier message sizes in bits (element counts times ceil(log2 q)).
struct MessageSizes {
  std::uint64_t msg1 = 0;  // challenge, 2dr
  std::uint64_t msg2 = 0;  // mask, wraparound and squared-norm bit shares
  std::uint64_t msg3 = 0;  // batching coins, t log q
  std::uint64_t msg4 = 0;  // t inner-product proof slices
  std::uint64_t exchange = 0;
  std::uint64_t input_shares = 0;  // d log q
  double msg2_bound = 0;  // (r/2 + 2) log^2 q
  double msg4_bound = 0;  // t (4 sqrt(d + log q (r+2)/2) + 1) log q
  std::size_t msg2_elements = 0;
  std::size_t msg4_elements = 0;
  std::size_t exchange_elements = 0;
  std::uint32_t L = 0;
};
MessageSizes message_sizes(const NormParams& p);

// ---------------------------------------------------------------------------
// Protocol messages.

struct NormMsg2 {
  WraparoundShare wrap;
  RangeProofShare sq;
};

struct NormMsg4 {
  std::vector<InnerProductProof> proofs;  // one per repetition
};

struct NormExchange {
  Share g_sum;
  Share range_lin;  // unused in power-of-two mode
  std::vector<VerifierExchange> quad;

  std::size_t element_count(bool pow2) const;
};

// Deviations a cheating prover may apply; the honest prover leaves them empty.
struct ProverHooks {
  // Edit the plaintext assignment X'_1..X'_n before it is shared.
  std::function<void(std::vector<Fe>& assignment, const WraparoundChallenge& z)> assignment;
  // Edit each plaintext inner-product proof before it is shared.
  InnerProductCheat inner_product;
  // Continue instead of aborting when too many repetitions fail.
  bool never_abort = false;
};

class NormProver {
 public:
  NormProver(NormParams p, std::vector<Fe> x, Rng rng, ProverHooks hooks = {});

  std::array<ShareVector, 2> share_input();
  // nullopt on abort.
  std::optional<std::array<NormMsg2, 2>> round2(const WraparoundChallenge& z);
  std::array<NormMsg4, 2> round4(std::span<const Fe> rcs);

  const std::vector<Fe>& assignment() const { return assignment_; }

 private:
  NormParams p_;
  std::vector<Fe> x_;
  Rng rng_;
  ProverHooks hooks_;
  std::array<ShareVector, 2> x_shares_;
  std::vector<Fe> assignment_;
  std::array<NormMsg2, 2> msg2_;
  ConstraintSystem sys_;
};

// Checks the message shapes; throws std::invalid_argument when they are wrong.
void check_msg2_shape(const NormParams& p, const NormMsg2& m);
void check_msg4_shape(const NormParams& p, const NormMsg4& m);

// This verifier's share of the full assignment X'_1..X'_n.
ShareVector assemble_assignment(const NormParams& p, const ShareVector& x, const NormMsg2& m);

// Everything verifier j computes locally before the exchange. Throws
// std::invalid_argument on malformed input.
NormExchange norm_verifier_exchange(const NormParams& p, const ShareVector& x, const WraparoundChallenge& z,
                                    const NormMsg2& m2, std::span<const Fe> rcs, const NormMsg4& m4,
                                    std::span<const Fe> rhos);
Verdict norm_decide(const NormParams& p, const NormExchange& e0, const NormExchange& e1);

struct InteractiveTranscript {
  std::array<ShareVector, 2> inputs;
  WraparoundChallenge z;
  std::array<NormMsg2, 2> msg2;
  std::vector<Fe> rcs;
  std::array<NormMsg4, 2> msg4;
  std::vector<Fe> rhos;
  std::array<NormExchange, 2> exchange;
};

// One interactive session. prover_rng drives the client/prover, coins the
// verifiers' public randomness.
Verdict run_norm_interactive(const NormParams& p, std::span<const Fe> x, Rng prover_rng, Rng& coins,
                             const ProverHooks& hooks = {}, InteractiveTranscript* out = nullptr);

// Wire encodings of the prover messages (per verifier).
std::vector<std::uint8_t> serialize(const Field& f, const NormMsg2& m);
NormMsg2 deserialize_msg2(const NormParams& p, int verifier, std::span<const std::uint8_t> in);
std::vector<std::uint8_t> serialize(const Field& f, const NormMsg4& m);
NormMsg4 deserialize_msg4(const NormParams& p, std::span<const std::uint8_t> in);
std::vector<std::uint8_t> serialize(const Field& f, const InnerProductProof& p);
InnerProductProof read_inner_product_proof(const Field& f, ByteReader& r);
void write_exchange(ByteWriter& w, const Field& f, const VerifierExchange& e);
VerifierExchange read_exchange(ByteReader& r, const Field& f, std::uint32_t L);
std::vector<std::uint8_t> serialize(const Field& f, const NormExchange& e);
NormExchange deserialize_exchange(const NormParams& p, std::span<const std::uint8_t> in);

// Squared norm sum_i X_i^2 of signed representatives, saturating at 2^127 - 1.
u128 squared_norm(const Field& f, std::span<const Fe> x);

}  // namespace pine
