#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pine/dzk.hpp"
#include "pine/field.hpp"
#include "pine/fiat_shamir.hpp"
#include "pine/norm.hpp"

namespace pine {

// Client-to-server communication, counted per verifier (one server's view),
// plus a field-operation model for the prover.
struct CostReport {
  std::string variant;  // "statistical" or "dzk"
  std::size_t d = 0;
  std::uint64_t B = 0;
  unsigned log_q = 0;
  unsigned t = 0;
  std::size_t r = 0;
  std::size_t tau_r = 0;
  std::uint32_t L = 0;
  double alpha = 0;  // alpha_hat of the wraparound window (statistical only)

  std::uint64_t baseline_bits = 0;  // d log q at the aggregation field
  std::uint64_t input_bits = 0;     // the input shares, at the protocol field
  std::uint64_t proof_bits = 0;     // message 2 (statistical) or the squared-norm bits (dzk)
  std::uint64_t ip_bits = 0;        // inner-product proof slices
  std::uint64_t fs_bits = 0;        // blinds and claimed peer hashes of the non-interactive transform
  std::uint64_t client_bits = 0;
  double overhead = 0;  // (client_bits - baseline_bits) / baseline_bits

  // Same accounting with the size bounds stated alongside soundness.
  double bound_client_bits = 0;
  double bound_overhead = 0;

  std::uint64_t exchange_bits = 0;  // verifier to verifier, not part of the overhead

  OpCounts prover_ops;  // analytic model
};

// FS data per verifier: rounds * 2 digests (the blind and the claimed hash of
// the peer's view), kappa bits each.
std::uint64_t fs_bits(unsigned rounds, const FsConfig& cfg = {});

CostReport cost(const NormParams& p);
// Selects parameters first; InfeasibleParams propagates.
CostReport cost_statistical(std::size_t d, std::uint64_t B, const Field& f, double rho, double delta,
                            const SelectOptions& opt = {});

// The differential variant needs q > 4 Lambda^2, which can exceed the
// aggregation field. The protocol field is then taken to be the smallest
// power-of-two width that fits (log q = max(base_bits, bits of q_min)), and
// the overhead is measured against d * base_bits.
CostReport cost_dzk(double eps, double delta, std::uint64_t B, std::size_t d, unsigned base_bits, double rho,
                    Calibration cal = Calibration::kClosedForm);
CostReport cost(const DzkParams& p);

// Expected field operations of one honest prover run (input sharing through
// the last message), following the prover's loop structure.
OpCounts analytic_prover_ops(const NormParams& p);
OpCounts analytic_prover_ops(const DzkParams& p);
// The same quantity counted on an actual run with the given seed.
OpCounts instrumented_prover_ops(const NormParams& p, std::uint64_t seed);
OpCounts instrumented_prover_ops(const DzkParams& p, std::uint64_t seed);

// Tables.
struct IntroRow {
  std::size_t d = 0;
  std::uint64_t baseline_bits = 0;
  double prior_overhead = 0;  // bit-decomposed sharing of 15-bit entries, cited
  CostReport statistical;
  CostReport dzk;
};
std::vector<IntroRow> intro_table(const std::vector<std::size_t>& dims, std::uint64_t B, double rho,
                                  double delta, double eps);

std::string format_intro_table(const std::vector<IntroRow>& rows);
// One row per report: t, r, tau, alpha, message sizes, emitted and bound overheads.
std::string format_verbose_table(const std::vector<CostReport>& rows);

}  // namespace pine
