#pragma once

#include <string_view>

namespace pine {

enum class RejectCause {
  kNone,
  kMalformed,        // a message failed to parse or had the wrong shape
  kAbort,            // the prover gave up (too many failed repetitions)
  kSuccessCount,     // sum of mask bits differs from tau*r
  kRangeLinear,      // squared-norm range check linear equality failed
  kQuadratic,        // inner-product check of the constraint batch failed
  kShareNorm,        // a noisy share exceeded the norm cap
  kFsInconsistent,   // Fiat-Shamir hashes disagree between the verifiers
};

struct Verdict {
  bool accept = false;
  RejectCause cause = RejectCause::kMalformed;

  static Verdict ok() { return {true, RejectCause::kNone}; }
  static Verdict reject(RejectCause c) { return {false, c}; }
};

std::string_view to_string(RejectCause c);

}  // namespace pine
