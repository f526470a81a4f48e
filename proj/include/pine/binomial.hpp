#pragma once

#include <cstddef>

namespace pine {

// log2 P[Bin(n, p) >= k], summed exactly in the log domain (lgamma terms).
// Returns -infinity when the probability is zero.
double log2_binomial_upper_tail(std::size_t n, std::size_t k, double p);
double binomial_upper_tail(std::size_t n, std::size_t k, double p);

// Soundness error of r wraparound repetitions with acceptance threshold
// tau_r successes: P[Bin(r, 1/2) >= tau_r].
double err_sound(std::size_t r, std::size_t tau_r);
double log2_err_sound(std::size_t r, std::size_t tau_r);

// Completeness error with per-repetition failure probability eta:
// 1 - P[Bin(r, 1 - eta) >= tau_r], evaluated as the upper tail of the
// failure count so that tiny values keep full precision.
double err_complete(std::size_t r, std::size_t tau_r, double eta);
double log2_err_complete(std::size_t r, std::size_t tau_r, double eta);

// Convert a fractional threshold tau into the integer count tau*r. Accepts a
// tau printed to four decimals; throws std::invalid_argument if tau*r is not
// (close to) an integer or tau is not in (1/2, 1].
std::size_t tau_count(std::size_t r, double tau);

}  // namespace pine
