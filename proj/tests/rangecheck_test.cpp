#include "pine/rangecheck.hpp"

#include <gtest/gtest.h>

#include "pine/error.hpp"

namespace pine {
namespace {

bool is_bit(Fe x) { return x.v <= 1; }

// Full plaintext acceptance: linear check, residual relation and bit-ness.
bool accepts(const Field& f, const RangeClaim& claim, std::span<const Fe> q_values,
             const std::array<RangeProofShare, 2>& sh) {
  if (!verify_range_linear(f, sh[0], sh[1], claim)) return false;
  const std::vector<Fe> v = reconstruct(f, ShareVector{0, sh[0].v}, ShareVector{1, sh[1].v});
  const std::vector<Fe> u = reconstruct(f, ShareVector{0, sh[0].u}, ShareVector{1, sh[1].u});
  // X'_0 = 1 | Q | v | u
  std::vector<Fe> xp{f.one()};
  std::vector<std::uint32_t> q_vars;
  for (Fe q : q_values) {
    q_vars.push_back(static_cast<std::uint32_t>(xp.size()));
    xp.push_back(q);
  }
  const auto v_base = static_cast<std::uint32_t>(xp.size());
  xp.insert(xp.end(), v.begin(), v.end());
  const auto u_base = static_cast<std::uint32_t>(xp.size());
  xp.insert(xp.end(), u.begin(), u.end());
  const RangeResidual res = residual_constraints(f, claim, q_vars, v_base, u_base);
  if (evaluate(f, res.relation, xp) != res.relation.target) return false;
  for (const auto& c : res.bitness) {
    if (evaluate(f, c, xp) != c.target) return false;
  }
  return true;
}

TEST(RangeCheck, Layout) {
  EXPECT_EQ(range_layout(0, 15).b, 4u);
  EXPECT_TRUE(range_layout(0, 15).pow2);
  EXPECT_EQ(range_layout(3, 12).b, 4u);
  EXPECT_FALSE(range_layout(3, 12).pow2);
  EXPECT_EQ(range_layout(0, (i128{1} << 30)).b, 31u);
  EXPECT_THROW(range_layout(2, 1), std::invalid_argument);
}

TEST(RangeCheck, FieldPrecondition) {
  const Field f(257);
  EXPECT_NO_THROW(validate_claim(f, RangeClaim{{}, 0, 84}));  // 3*84 + 2 = 254 < 257
  EXPECT_THROW(validate_claim(f, RangeClaim{{}, 0, 85}), std::invalid_argument);
}

class RangeExhaustive : public ::testing::TestWithParam<std::pair<int, int>> {};

// Every field element: honest proofs accept exactly the in-range sums.
TEST_P(RangeExhaustive, CompletenessOverTheWholeField) {
  const Field f(257);
  const auto [lo, hi] = GetParam();
  const RangeClaim claim{{Fe{1}, Fe{2}}, lo, hi};
  Rng rng(11);
  for (u128 q0 = 0; q0 < 257; q0 += 7) {
    for (u128 q1 = 0; q1 < 257; ++q1) {
      const std::vector<Fe> qs{Fe{q0}, Fe{q1}};
      const i128 sum = f.to_signed(f.add(qs[0], f.mul(Fe{2}, qs[1])));
      const i128 canon = sum < 0 ? sum + 257 : sum;
      const bool in_range = (canon >= lo && canon <= hi) || (canon - 257 >= lo && canon - 257 <= hi);
      const auto sh = prove_range(f, qs, claim, rng);
      EXPECT_EQ(accepts(f, claim, qs, sh), in_range) << "q0=" << static_cast<int>(q0) << " q1=" << static_cast<int>(q1);
      if (in_range) {
        for (std::size_t j = 0; j < sh[0].v.size(); ++j) EXPECT_TRUE(is_bit(f.add(sh[0].v[j], sh[1].v[j])));
      }
    }
  }
}

// Any bit vectors passing the linear check pin V to [0, hi - lo].
TEST_P(RangeExhaustive, SoundnessOverAllBitAssignments) {
  const Field f(257);
  const auto [lo, hi] = GetParam();
  const RangeLayout layout = range_layout(lo, hi);
  const unsigned nb = layout.pow2 ? layout.b : 2 * layout.b;
  for (unsigned mask = 0; mask < (1u << nb); ++mask) {
    i128 V = 0, U = 0;
    for (unsigned j = 0; j < layout.b; ++j) {
      V += ((mask >> j) & 1) << j;
      if (!layout.pow2) U += ((mask >> (layout.b + j)) & 1) << j;
    }
    if (!layout.pow2 && f.from_int(V + U) != f.from_int(hi - lo)) continue;
    EXPECT_LE(V, hi - lo);
  }
}

INSTANTIATE_TEST_SUITE_P(Ranges, RangeExhaustive,
                         ::testing::Values(std::pair{0, 15}, std::pair{3, 12}, std::pair{-5, 20}, std::pair{0, 84}));

TEST(RangeCheck, SimulatedShareHasProtocolShape) {
  const Field f = Field::f64();
  Rng rng(4);
  const RangeClaim claim{{Fe{1}}, 0, 1000};
  const RangeProofShare sim = simulate_range_share(f, claim, 1, rng);
  const auto real = prove_range(f, std::vector<Fe>{Fe{17}}, claim, rng);
  EXPECT_EQ(sim.v.size(), real[1].v.size());
  EXPECT_EQ(sim.u.size(), real[1].u.size());
  EXPECT_EQ(serialize(f, sim).size(), serialize(f, real[1]).size());
}

TEST(RangeCheck, SerializationRoundTrip) {
  const Field f = Field::f64();
  Rng rng(5);
  const RangeClaim claim{{Fe{1}}, 0, 1000};
  const auto sh = prove_range(f, std::vector<Fe>{Fe{999}}, claim, rng);
  const auto bytes = serialize(f, sh[0]);
  const RangeProofShare back = deserialize_range_share(f, 0, bytes);
  EXPECT_EQ(back.v, sh[0].v);
  EXPECT_EQ(back.u, sh[0].u);
  auto bad = bytes;
  bad[0] = 7;
  EXPECT_THROW(deserialize_range_share(f, 0, bad), FormatError);
}

}  // namespace
}  // namespace pine
