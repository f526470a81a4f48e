#include "pine/field.hpp"

#include <stdexcept>

#include "pine/error.hpp"

namespace pine {

namespace {

thread_local OpCounts tls_counts;

constexpr std::uint64_t kGoldilocksEps = 0xffffffffULL;  // 2^32 - 1

std::uint64_t reduce_goldilocks(u128 x) {
  const auto lo = static_cast<std::uint64_t>(x);
  const auto hi = static_cast<std::uint64_t>(x >> 64);
  const std::uint64_t hi_hi = hi >> 32;
  const std::uint64_t hi_lo = hi & kGoldilocksEps;

  std::uint64_t t0 = lo - hi_hi;
  if (lo < hi_hi) t0 -= kGoldilocksEps;
  const std::uint64_t t1 = hi_lo * kGoldilocksEps;
  std::uint64_t t2 = t0 + t1;
  if (t2 < t0) t2 += kGoldilocksEps;
  const auto p = static_cast<std::uint64_t>(kPrime64);
  if (t2 >= p) t2 -= p;
  return t2;
}

struct U256 {
  u128 lo;
  u128 hi;
};

U256 mul_wide(u128 a, u128 b) {
  const u128 mask = ~std::uint64_t{0};
  const u128 a0 = a & mask, a1 = a >> 64;
  const u128 b0 = b & mask, b1 = b >> 64;
  const u128 p00 = a0 * b0;
  const u128 p01 = a0 * b1;
  const u128 p10 = a1 * b0;
  const u128 p11 = a1 * b1;

  const u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
  const u128 lo = (p00 & mask) | (mid << 64);
  const u128 hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return {lo, hi};
}

}  // namespace

OpCounts& op_counts() { return tls_counts; }
void reset_op_counts() { tls_counts = OpCounts{}; }

Field::Field(u128 q) : q_(q), bits_(ceil_log2(q)), kind_(Kind::kSmall) {
  if (q < 2) throw std::invalid_argument("field modulus must be at least 2");
  if (q == kPrime64) {
    kind_ = Kind::kGoldilocks;
  } else if ((q >> 64) == 0) {
    kind_ = Kind::kSmall;
  } else {
    const u128 c = (~u128{0} - q) + 1;
    if ((c >> 64) != 0) {
      throw std::invalid_argument("128-bit moduli must have the form 2^128 - c with c < 2^64");
    }
    kind_ = Kind::kPseudoMersenne;
    c_ = static_cast<std::uint64_t>(c);
  }
  if (!probably_prime()) throw std::invalid_argument("field modulus is not prime");
}

u128 Field::mulmod(u128 a, u128 b) const {
  switch (kind_) {
    case Kind::kGoldilocks:
      return reduce_goldilocks(a * b);
    case Kind::kSmall:
      return (a * b) % q_;
    case Kind::kPseudoMersenne: {
      U256 x = mul_wide(a, b);
      while (x.hi != 0) {
        const u128 h0 = static_cast<std::uint64_t>(x.hi);
        const u128 h1 = x.hi >> 64;
        const u128 m0 = h0 * c_;
        const u128 m1 = h1 * c_;
        // m0 + (m1 << 64) + x.lo
        u128 lo = m0 + (m1 << 64);
        u128 carry = (lo < m0) ? 1 : 0;
        const u128 sum = lo + x.lo;
        carry += (sum < lo) ? 1 : 0;
        x.hi = (m1 >> 64) + carry;
        x.lo = sum;
      }
      return x.lo >= q_ ? x.lo - q_ : x.lo;
    }
  }
  return 0;
}

u128 Field::powmod(u128 a, u128 e) const {
  u128 result = 1 % q_;
  a %= q_;
  while (e != 0) {
    if (e & 1) result = mulmod(result, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return result;
}

bool Field::probably_prime() const {
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  for (std::uint64_t p : kBases) {
    if (q_ == p) return true;
    if (q_ % p == 0) return false;
  }
  u128 d = q_ - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    u128 x = powmod(a, d);
    if (x == 1 || x == q_ - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == q_ - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Fe Field::pow(Fe a, u128 e) const {
  Fe result = one();
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Fe Field::inv(Fe a) const {
  if (a.v == 0) throw std::domain_error("inverse of zero");
  return pow(a, q_ - 2);
}

Fe Field::from_int(i128 i) const {
  if (i >= 0) return Fe{static_cast<u128>(i) % q_};
  const u128 mag = static_cast<u128>(-(i + 1)) + 1;
  const u128 r = mag % q_;
  return Fe{r == 0 ? 0 : q_ - r};
}

void Field::write(Fe a, std::vector<std::uint8_t>& out) const {
  u128 v = a.v;
  for (std::size_t i = 0; i < byte_length(); ++i) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
  }
}

Fe Field::read(std::span<const std::uint8_t> in) const {
  const std::size_t n = byte_length();
  if (in.size() < n) throw FormatError("truncated field element");
  u128 v = 0;
  for (std::size_t i = n; i-- > 0;) v = (v << 8) | in[i];
  if (v >= q_) throw FormatError("non-canonical field element");
  return Fe{v};
}

std::vector<std::uint8_t> bit_decompose(u128 value, unsigned width) {
  if (width < 128 && (value >> width) != 0) {
    throw std::overflow_error("value does not fit in the requested bit width");
  }
  std::vector<std::uint8_t> bits(width);
  for (unsigned j = 0; j < width; ++j) bits[j] = static_cast<std::uint8_t>((value >> j) & 1);
  return bits;
}

u128 bit_recompose(std::span<const std::uint8_t> bits) {
  u128 v = 0;
  for (std::size_t j = bits.size(); j-- > 0;) v = (v << 1) | (bits[j] & 1);
  return v;
}

unsigned ceil_log2(u128 x) {
  unsigned b = 0;
  while (b < 128 && (u128{1} << b) < x) ++b;
  return b;
}

bool is_power_of_two(u128 x) { return x != 0 && (x & (x - 1)) == 0; }

}  // namespace pine
