#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pine/dzk.hpp"
#include "pine/norm.hpp"
#include "pine/session.hpp"

namespace pine {

// In-process three-party simulation: one client/prover, two verifiers, all
// messages passed in memory.

enum class Strategy {
  kHonest,
  kOverNorm,       // ||X||^2 = B + delta, with squared-norm bits forged to pass the linear checks
  kBitCheater,     // honest X, one wraparound bit pair replaced by non-bits that keep S_0 intact
  kShiftConstant,  // over-norm X, inner-product proof shifted so the linear check passes
};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view s);

struct SessionConfig {
  Variant variant = Variant::kStatistical;
  NormParams norm;  // statistical variant
  DzkParams dzk;    // differential variant
  std::vector<Fe> x;  // the client's input (replaced by over-norm strategies)
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::kHonest;
  std::int64_t over_norm_delta = 1;
  bool non_interactive = false;
};

struct Outcome {
  Verdict verdict;
  // Per verifier, as emitted.
  std::uint64_t msg1_bits = 0;
  std::size_t msg2_elements = 0;
  std::size_t msg3_elements = 0;
  std::size_t msg4_elements = 0;
  std::size_t exchange_elements = 0;
  std::size_t transcript_bytes = 0;
  double seconds = 0;
};

// The seed determines everything: client, verifier coins and adversary draw
// from independent labelled streams ("client", "coins", "adversary").
// transcript, if given, receives the serialized transcript (or the proof
// bytes for non-interactive runs).
Outcome run_session(const SessionConfig& cfg, std::vector<std::uint8_t>* transcript = nullptr);

// Transcript encodings. Parsing throws FormatError.
std::vector<std::uint8_t> serialize_transcript(const NormParams& p, const InteractiveTranscript& t);
InteractiveTranscript parse_transcript(const NormParams& p, std::span<const std::uint8_t> in);
std::vector<std::uint8_t> serialize_transcript(const DzkParams& p, const DzkTranscript& t);

// ---------------------------------------------------------------------------
// Adversaries.

struct Adversary {
  std::vector<Fe> x;
  ProverHooks hooks;
  DzkHooks dzk_hooks;
};

// Integer vector of length d with sum of squares exactly target (greedy
// largest squares); throws std::invalid_argument if d coordinates do not
// suffice.
std::vector<std::int64_t> vector_with_squared_norm(std::size_t d, std::uint64_t target);

// Forces sum_j 2^j bits_j = value in the field by adjusting bits_0 after
// writing the low bits of value; the result satisfies every linear relation
// but not bit-ness unless value fits.
void forge_recomposition(const Field& f, std::span<Fe> bits, Fe value);

Adversary over_norm(const NormParams& p, std::int64_t delta, Rng& rng);
Adversary over_norm(const DzkParams& p, std::int64_t delta, Rng& rng);
Adversary bit_cheater(const NormParams& p, std::span<const Fe> x);
Adversary shift_cheater(const NormParams& p, std::int64_t delta, Rng& rng);

// Vectors with sum of squares >= q that the wraparound test must catch.
// Case I concentrates the mass in one entry (max |X_i| >= sqrt(q));
// case II spreads it over all entries with a bounded maximum.
std::vector<std::int64_t> wraparound_case_one(u128 q, std::size_t d);
std::vector<std::int64_t> wraparound_case_two(u128 q, std::size_t d);

// Flip one byte of a serialized proof at the given position (mod size) with
// a non-zero mask.
std::vector<std::uint8_t> fs_tamper(std::span<const std::uint8_t> proof, std::size_t position, std::uint8_t mask);

// ---------------------------------------------------------------------------
// Monte Carlo.

struct RateEstimate {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0;
  double lo = 0;  // 95% Wilson interval
  double hi = 0;
};

RateEstimate wilson(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// Runs trial(i) for i < trials on up to jobs threads and counts true results.
// Throws std::invalid_argument when trials == 0.
RateEstimate monte_carlo(std::size_t trials, const std::function<bool(std::size_t)>& trial, unsigned jobs = 1);

std::string csv_header();
std::string csv_row(std::string_view strategy, std::string_view params, const RateEstimate& e);

std::vector<Fe> to_field(const Field& f, std::span<const std::int64_t> x);

}  // namespace pine
