#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pine {

using u128 = unsigned __int128;
using i128 = __int128;

// A canonical element of GF(q), 0 <= v < q. The modulus lives in the Field
// that produced it; mixing elements of different fields is a caller bug.
struct Fe {
  u128 v = 0;
  friend bool operator==(Fe, Fe) = default;
};

// Per-thread counters of field operations, used by the cost model.
struct OpCounts {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;  // additions, subtractions and negations
};
OpCounts& op_counts();
void reset_op_counts();

// 2^64 - 2^32 + 1
inline constexpr u128 kPrime64 = (u128{1} << 64) - (u128{1} << 32) + 1;
// 2^128 - 159, the largest prime below 2^128
inline constexpr u128 kPrime128 = ~u128{0} - 158;

class Field {
 public:
  // Supported moduli: primes below 2^64, and primes of the form 2^128 - c
  // with c < 2^64. Throws std::invalid_argument otherwise.
  explicit Field(u128 q);

  static Field f64() { return Field(kPrime64); }
  static Field f128() { return Field(kPrime128); }

  u128 modulus() const { return q_; }
  unsigned bit_length() const { return bits_; }
  std::size_t byte_length() const { return (bits_ + 7) / 8; }

  Fe zero() const { return Fe{0}; }
  Fe one() const { return Fe{1}; }

  Fe add(Fe a, Fe b) const {
    ++op_counts().add;
    u128 s = a.v + b.v;
    if (s < a.v || s >= q_) s -= q_;
    return Fe{s};
  }
  Fe sub(Fe a, Fe b) const {
    ++op_counts().add;
    return Fe{a.v >= b.v ? a.v - b.v : a.v + (q_ - b.v)};
  }
  Fe neg(Fe a) const {
    ++op_counts().add;
    return Fe{a.v == 0 ? 0 : q_ - a.v};
  }
  Fe mul(Fe a, Fe b) const {
    ++op_counts().mul;
    return Fe{mulmod(a.v, b.v)};
  }
  Fe pow(Fe a, u128 e) const;
  // Throws std::domain_error for a == 0.
  Fe inv(Fe a) const;

  Fe from_int(i128 i) const;
  Fe from_u128(u128 u) const { return Fe{u % q_}; }
  // Symmetric representative in [-floor(q/2), floor(q/2)].
  i128 to_signed(Fe a) const {
    return a.v <= q_ / 2 ? static_cast<i128>(a.v) : -static_cast<i128>(q_ - a.v);
  }

  bool is_canonical(u128 v) const { return v < q_; }

  // Little-endian, byte_length() bytes.
  void write(Fe a, std::vector<std::uint8_t>& out) const;
  // Throws pine::FormatError on short input or a non-canonical value.
  Fe read(std::span<const std::uint8_t> in) const;

  friend bool operator==(const Field& a, const Field& b) { return a.q_ == b.q_; }

 private:
  enum class Kind { kSmall, kGoldilocks, kPseudoMersenne };

  u128 mulmod(u128 a, u128 b) const;
  u128 powmod(u128 a, u128 e) const;
  bool probably_prime() const;

  u128 q_;
  unsigned bits_;
  Kind kind_;
  std::uint64_t c_ = 0;  // q = 2^128 - c_ for kPseudoMersenne
};

// Little-endian bits of value; throws std::overflow_error if value >= 2^width.
std::vector<std::uint8_t> bit_decompose(u128 value, unsigned width);
u128 bit_recompose(std::span<const std::uint8_t> bits);

// ceil(log2(x)) for x >= 1, with ceil_log2(1) = 0.
unsigned ceil_log2(u128 x);
bool is_power_of_two(u128 x);

inline double to_double(u128 x) {
  return static_cast<double>(static_cast<std::uint64_t>(x >> 64)) * 18446744073709551616.0 +
         static_cast<double>(static_cast<std::uint64_t>(x));
}

}  // namespace pine
