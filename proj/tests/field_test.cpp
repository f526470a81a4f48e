#include "pine/field.hpp"

#include <gtest/gtest.h>

#include <random>

#include "pine/error.hpp"

namespace pine {
namespace {

u128 hex128(std::uint64_t hi, std::uint64_t lo) { return (u128{hi} << 64) | lo; }

TEST(Field, GoldilocksProductMatchesReference) {
  const Field f = Field::f64();
  const Fe a{13758683416654328711ull};
  const Fe b{0x0123456789abcdefull};
  EXPECT_EQ(f.mul(a, b).v, u128{16149284598206313743ull});
}

TEST(Field, GoldilocksInverseAndPowers) {
  const Field f = Field::f64();
  EXPECT_EQ(f.inv(Fe{3}).v, u128{12297829379609722881ull});
  // 2^96 = -1 in this field.
  EXPECT_EQ(f.pow(Fe{2}, 96).v, kPrime64 - 1);
}

TEST(Field, PseudoMersenneProductMatchesReference) {
  const Field f = Field::f128();
  const Fe a{hex128(0xfedcba9876543210ull, 0xfedcba9876543210ull) % kPrime128};
  const Fe b{hex128(0x0f1e2d3c4b5a6978ull, 0x8796a5b4c3d2e1f0ull)};
  EXPECT_EQ(f.mul(a, b).v, hex128(0xd9b201c907bdeb99ull, 0xa01e138064c09888ull));
  EXPECT_EQ(f.inv(Fe{7}).v, hex128(0x2492492492492492ull, 0x492492492492490eull));
}

TEST(Field, SmallPrimeInverse) {
  const Field f(12289);
  EXPECT_EQ(f.inv(Fe{3}).v, u128{8193});
  EXPECT_THROW(f.inv(Fe{0}), std::domain_error);
}

TEST(Field, RejectsUnsupportedModuli) {
  EXPECT_THROW(Field(u128{1} << 64), std::invalid_argument);
  EXPECT_THROW(Field(12288), std::invalid_argument);
  EXPECT_THROW(Field(~u128{0}), std::invalid_argument);
  EXPECT_THROW(Field(1), std::invalid_argument);
}

TEST(Field, SignedRepresentatives) {
  const Field f(257);
  EXPECT_EQ(f.from_int(-1).v, u128{256});
  EXPECT_EQ(f.to_signed(Fe{256}), -1);
  EXPECT_EQ(f.to_signed(Fe{128}), 128);
  EXPECT_EQ(f.to_signed(Fe{129}), -128);
  EXPECT_EQ(f.from_int(-600).v, u128{171});
}

class FieldAxioms : public ::testing::TestWithParam<u128> {};

TEST_P(FieldAxioms, RingLawsHoldOnRandomElements) {
  const Field f(GetParam());
  std::mt19937_64 gen(7);
  auto draw = [&] {
    const u128 raw = (u128{gen()} << 64) | gen();
    return Fe{raw % f.modulus()};
  };
  for (int i = 0; i < 500; ++i) {
    const Fe a = draw(), b = draw(), c = draw();
    EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
    EXPECT_EQ(f.sub(f.add(a, b), b), a);
    EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
    if (a.v != 0) EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
  }
}

INSTANTIATE_TEST_SUITE_P(Moduli, FieldAxioms,
                         ::testing::Values(u128{257}, u128{12289}, u128{4294967291u}, kPrime64, kPrime128));

TEST(Field, SerializationRoundTripAndCanonicalCheck) {
  const Field f = Field::f128();
  std::vector<std::uint8_t> out;
  f.write(Fe{kPrime128 - 1}, out);
  ASSERT_EQ(out.size(), 16u);
  EXPECT_EQ(f.read(out).v, kPrime128 - 1);
  std::vector<std::uint8_t> bad(16, 0xff);
  EXPECT_THROW(f.read(bad), FormatError);
  EXPECT_THROW(f.read(std::span(out).first(15)), FormatError);
}

TEST(Field, OperationCounters) {
  const Field f(257);
  reset_op_counts();
  f.mul(Fe{3}, Fe{4});
  f.add(Fe{3}, Fe{4});
  f.sub(Fe{3}, Fe{4});
  f.neg(Fe{3});
  EXPECT_EQ(op_counts().mul, 1u);
  EXPECT_EQ(op_counts().add, 3u);
  reset_op_counts();
  EXPECT_EQ(op_counts().mul, 0u);
}

TEST(Bits, DecomposeRecompose) {
  const auto bits = bit_decompose(0b1011, 6);
  EXPECT_EQ(bits, (std::vector<std::uint8_t>{1, 1, 0, 1, 0, 0}));
  EXPECT_EQ(bit_recompose(bits), u128{11});
  EXPECT_THROW(bit_decompose(64, 6), std::overflow_error);
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(17), 5u);
  EXPECT_EQ(ceil_log2(u128{1} << 30), 30u);
  EXPECT_TRUE(is_power_of_two(1024));
  EXPECT_FALSE(is_power_of_two(0));
}

}  // namespace
}  // namespace pine
