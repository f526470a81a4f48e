#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "pine/field.hpp"

namespace pine {

// Deterministic ChaCha20 keystream generator. A seeded instance replays
// exactly; from_os() keys the same construction with OS entropy.
// Satisfies UniformRandomBitGenerator so it plugs into <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  explicit Rng(std::uint64_t seed);
  static Rng from_key(std::span<const std::uint8_t, 32> key);
  static Rng from_os();

  // Independent child stream named by label. Depends only on this stream's
  // key, not on how much of it has been consumed.
  Rng derive(std::string_view label) const;

  result_type operator()();
  void fill(std::span<std::uint8_t> out);

  std::uint64_t below(std::uint64_t n);  // uniform in [0, n), n > 0
  u128 below(u128 n);                    // uniform in [0, n), n > 0
  bool bit();
  Fe uniform(const Field& f) { return Fe{below(f.modulus())}; }
  double uniform01();  // 53-bit uniform in [0, 1)

 private:
  Rng() = default;
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t block_ = 0;
  std::array<std::uint8_t, 1024> buf_{};
  std::size_t pos_ = sizeof(buf_);
};

}  // namespace pine
