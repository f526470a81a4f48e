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

namespace pine {

enum class Calibration : std::uint8_t {
  kClosedForm = 0,  // c = sqrt(2 ln(1.25/delta)) / eps
  kAnalytic = 1,    // smallest c meeting the exact Gaussian-mechanism condition
};

// Noise multiplier for an L2 sensitivity of 1.
double gaussian_c(double eps, double delta, Calibration cal = Calibration::kClosedForm);

struct DzkParams {
  Field field = Field::f64();
  std::size_t d = 0;
  std::uint64_t B = 0;
  double eps = 0;
  double delta = 0;
  Calibration cal = Calibration::kClosedForm;
  unsigned t = 1;

  double c = 0;       // c_{eps, delta/2}
  double sigma = 0;   // c sqrt(B)
  double Delta = 0;   // squared-norm cap on the Gaussian draw
  double Lambda = 0;  // sqrt(B) + sqrt(Delta) + sqrt(d)
  u128 lambda_sq = 0;  // floor(Lambda^2), the integer share-norm cap
  u128 q_min = 0;      // smallest admissible modulus, floor(4 Lambda^2) + 1
  unsigned q_min_bits = 0;

  unsigned b_sq = 0;
  bool sq_pow2 = false;

  unsigned log_q() const { return field.bit_length(); }
};

// Delta = d sigma^2 (1 + 2 sqrt(beta/d) + 2 beta/d), beta = ln(8e/delta).
double truncation_cap(std::size_t d, double sigma, double delta);

// Derived quantities only; the field is left at its default and not checked.
// Throws std::invalid_argument unless eps, delta lie in (0, 1) and B >= 1.
DzkParams dzk_params(double eps, double delta, std::uint64_t B, std::size_t d,
                     Calibration cal = Calibration::kClosedForm);
// Recomputes Lambda and q_min from an explicit Delta.
DzkParams with_truncation_cap(DzkParams p, double Delta);

// Installs a field and a repetition count. Throws InfeasibleParams when
// q <= 4 Lambda^2 or the squared-norm range check does not fit.
DzkParams with_field(DzkParams p, const Field& f, unsigned t);
// Installs a field and picks the smallest t with soundness <= rho.
DzkParams select_dzk_params(double eps, double delta, std::uint64_t B, std::size_t d, const Field& f, double rho,
                            Calibration cal = Calibration::kClosedForm, unsigned max_t = 8);

// (2 sqrt(d + 2 log q) / (q - 2 sqrt(d + 2 log q)) + (2 log q + 1)/q)^t
double dzk_soundness_error(const DzkParams& p);

// Rejection sampling from N(0, sigma^2 I_d) conditioned on ||R||^2 <= Delta.
// rejections, if given, receives the number of discarded draws. Throws
// std::runtime_error after max_tries consecutive rejections.
std::vector<double> sample_truncated_gaussian(std::size_t d, double sigma, double Delta, Rng& rng,
                                              std::size_t* rejections = nullptr, std::size_t max_tries = 1000);

// share0 = -ceil(R), share1 = X + ceil(R).
std::array<ShareVector, 2> dzk_share(const DzkParams& p, std::span<const Fe> x, Rng& rng);
// Integer squared norm of the signed representatives is at most floor(Lambda^2).
bool share_norm_ok(const DzkParams& p, const ShareVector& s);

// Variables: X_1..X_d | v'_j | u'_j. Constraints: sum X_i^2 = sum 2^j v'_j
// and bit-ness of every v', u'.
ConstraintSystem dzk_constraints(const DzkParams& p);
std::size_t dzk_variable_count(const DzkParams& p);

struct DzkMsg1 {
  ShareVector x;
  RangeProofShare sq;
};

struct DzkMsg3 {
  std::vector<InnerProductProof> proofs;
};

struct DzkExchange {
  bool norm_ok = true;
  Share range_lin;
  std::vector<VerifierExchange> quad;
};

struct DzkHooks {
  // Edit the plaintext tail v', u' of the assignment before it is shared.
  std::function<void(std::vector<Fe>& assignment)> assignment;
  InnerProductCheat inner_product;
};

class DzkProver {
 public:
  DzkProver(DzkParams p, std::vector<Fe> x, Rng rng, DzkHooks hooks = {});

  std::array<DzkMsg1, 2> round1();
  std::array<DzkMsg3, 2> round3(std::span<const Fe> rcs);

 private:
  DzkParams p_;
  std::vector<Fe> x_;
  Rng rng_;
  DzkHooks hooks_;
  std::vector<Fe> assignment_;
  ConstraintSystem sys_;
};

void check_dzk_msg1_shape(const DzkParams& p, const DzkMsg1& m);
void check_dzk_msg3_shape(const DzkParams& p, const DzkMsg3& m);

// Throws std::invalid_argument on malformed shapes. A share over the norm cap
// is reported through norm_ok rather than an exception.
DzkExchange dzk_verifier_exchange(const DzkParams& p, const DzkMsg1& m1, std::span<const Fe> rcs, const DzkMsg3& m3,
                                  std::span<const Fe> rhos);
Verdict dzk_decide(const DzkParams& p, const DzkExchange& e0, const DzkExchange& e1);

struct DzkTranscript {
  std::array<DzkMsg1, 2> msg1;
  std::vector<Fe> rcs;
  std::array<DzkMsg3, 2> msg3;
  std::vector<Fe> rhos;
  std::array<DzkExchange, 2> exchange;
};

Verdict run_dzk_interactive(const DzkParams& p, std::span<const Fe> x, Rng prover_rng, Rng& coins,
                            const DzkHooks& hooks = {}, DzkTranscript* out = nullptr);

std::vector<std::uint8_t> serialize(const Field& f, const DzkMsg3& m);
DzkMsg3 deserialize_dzk_msg3(const DzkParams& p, std::span<const std::uint8_t> in);
std::vector<std::uint8_t> serialize(const Field& f, const DzkExchange& e);
DzkExchange deserialize_dzk_exchange(const DzkParams& p, std::span<const std::uint8_t> in);

}  // namespace pine
