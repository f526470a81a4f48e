#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pine/field.hpp"
#include "pine/random.hpp"

namespace pine {

struct Share {
  int verifier = 0;  // 0 or 1
  Fe value;
};

struct ShareVector {
  int verifier = 0;
  std::vector<Fe> values;

  std::size_t size() const { return values.size(); }
};

// Split x as (r, x - r) with r uniform.
std::pair<Share, Share> share(const Field& f, Fe x, Rng& rng);
// The same split with the randomness supplied explicitly.
std::pair<Share, Share> share_with(const Field& f, Fe x, Fe r);

std::array<ShareVector, 2> share_vector(const Field& f, std::span<const Fe> x, Rng& rng);

// Throws std::invalid_argument unless the indices are {0, 1}.
Fe reconstruct(const Field& f, const Share& a, const Share& b);
std::vector<Fe> reconstruct(const Field& f, const ShareVector& a, const ShareVector& b);

// Verifier j's share of sum_i alpha_i X_i.
Share local_linear(const Field& f, std::span<const Fe> alpha, const ShareVector& x);

// Accept iff z0 + z1 = z.
bool linear_equality_check(const Field& f, const Share& z0, const Share& z1, Fe z);

// A public constant c as a share: verifier 0 holds c, verifier 1 holds 0.
inline Fe constant_share(int verifier, Fe c) { return verifier == 0 ? c : Fe{0}; }

// Header (verifier index u8, length u32) followed by fixed-width elements.
std::vector<std::uint8_t> serialize(const Field& f, const ShareVector& s);
ShareVector deserialize_share_vector(const Field& f, std::span<const std::uint8_t> in);

}  // namespace pine
