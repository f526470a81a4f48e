#include "pine/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

namespace pine {
namespace {

std::uint64_t sum_squares(const std::vector<std::int64_t>& x) {
  std::uint64_t s = 0;
  for (auto v : x) s += static_cast<std::uint64_t>(v * v);
  return s;
}

TEST(Strategy, NamesRoundTrip) {
  for (Strategy s : {Strategy::kHonest, Strategy::kOverNorm, Strategy::kBitCheater, Strategy::kShiftConstant}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_FALSE(parse_strategy("nonsense").has_value());
}

TEST(VectorWithSquaredNorm, HitsTargetExactly) {
  for (std::uint64_t target : {0ull, 1ull, 6ull, 7ull, 1000ull, 1048577ull, (1ull << 30) + 1}) {
    const auto x = vector_with_squared_norm(10, target);
    EXPECT_EQ(x.size(), 10u);
    EXPECT_EQ(sum_squares(x), target) << target;
  }
  EXPECT_EQ(sum_squares(vector_with_squared_norm(4, 7)), 7u);
  EXPECT_THROW(vector_with_squared_norm(3, 7), std::invalid_argument);
}

TEST(ForgeRecomposition, SatisfiesLinearRelation) {
  const Field f(257);
  std::vector<Fe> bits(4, Fe{0});
  forge_recomposition(f, bits, Fe{200});
  Fe acc = f.zero();
  for (std::size_t j = 0; j < bits.size(); ++j) acc = f.add(acc, f.mul(f.from_int(1 << j), bits[j]));
  EXPECT_EQ(acc, Fe{200});
  EXPECT_FALSE(bits[0] == Fe{0} || bits[0] == Fe{1});
}

TEST(WraparoundCases, ExceedModulus) {
  for (u128 q : {u128{257}, u128{12289}, u128{65537}}) {
    const auto one = wraparound_case_one(q, 50);
    const auto two = wraparound_case_two(q, 50);
    EXPECT_GE(u128{sum_squares(one)}, q);
    EXPECT_GE(u128{sum_squares(two)}, q);
    EXPECT_GE(static_cast<double>(std::abs(one[0])), std::sqrt(to_double(q)));
    const auto max2 = *std::max_element(two.begin(), two.end());
    EXPECT_LT(static_cast<double>(max2), std::sqrt(to_double(q)));
  }
}

TEST(FsTamper, ChangesExactlyOneByte) {
  const std::vector<std::uint8_t> in{1, 2, 3, 4};
  const auto out = fs_tamper(in, 6, 0x80);
  ASSERT_EQ(out.size(), in.size());
  int diff = 0;
  for (std::size_t i = 0; i < in.size(); ++i) diff += in[i] != out[i];
  EXPECT_EQ(diff, 1);
  EXPECT_EQ(out[2], 3 ^ 0x80);
}

TEST(Wilson, KnownInterval) {
  const auto e = wilson(50, 100);
  EXPECT_DOUBLE_EQ(e.rate, 0.5);
  EXPECT_NEAR(e.lo, 0.40383153, 1e-6);
  EXPECT_NEAR(e.hi, 0.59616847, 1e-6);
  const auto zero = wilson(0, 1000);
  EXPECT_NEAR(zero.lo, 0.0, 1e-12);
  EXPECT_NEAR(zero.hi, 0.0038267, 1e-6);
  EXPECT_THROW(wilson(0, 0), std::invalid_argument);
}

TEST(MonteCarlo, CountsAndThreads) {
  const auto even = [](std::size_t i) { return i % 2 == 0; };
  EXPECT_EQ(monte_carlo(101, even, 1).successes, 51u);
  EXPECT_EQ(monte_carlo(101, even, 7).successes, 51u);
  EXPECT_THROW(monte_carlo(0, even), std::invalid_argument);
  EXPECT_THROW(monte_carlo(10, [](std::size_t i) -> bool { throw std::runtime_error(std::to_string(i)); }, 3),
               std::runtime_error);
}

TEST(Csv, RowFormat) {
  EXPECT_EQ(csv_header(), "strategy,params,trials,accepts,rate,ci_lo,ci_hi");
  const auto row = csv_row("honest", "d=4", wilson(4, 4));
  EXPECT_EQ(row.rfind("honest,\"d=4\",4,4,1,", 0), 0u);
}

SessionConfig base_config(Strategy s, std::uint64_t seed) {
  SessionConfig c;
  c.norm = make_norm_params(Field::f64(), 16, 1u << 16, 51, 51, 1, std::exp2(kDefaultEtaLog2));
  c.x = to_field(c.norm.field, vector_with_squared_norm(16, 1u << 16));
  c.strategy = s;
  c.seed = seed;
  return c;
}

TEST(RunSession, HonestAcceptsAndReportsSizes) {
  const auto cfg = base_config(Strategy::kHonest, 1);
  std::vector<std::uint8_t> tr;
  const auto o = run_session(cfg, &tr);
  EXPECT_TRUE(o.verdict.accept);
  const auto sizes = message_sizes(cfg.norm);
  EXPECT_EQ(o.msg1_bits, sizes.msg1);
  EXPECT_EQ(o.msg2_elements, sizes.msg2_elements);
  EXPECT_EQ(o.msg4_elements, sizes.msg4_elements);
  EXPECT_EQ(o.transcript_bytes, tr.size());
}

TEST(RunSession, SameSeedSameTranscript) {
  std::vector<std::uint8_t> a, b;
  run_session(base_config(Strategy::kHonest, 9), &a);
  run_session(base_config(Strategy::kHonest, 9), &b);
  EXPECT_EQ(a, b);
  const auto t = parse_transcript(base_config(Strategy::kHonest, 9).norm, a);
  EXPECT_EQ(serialize_transcript(base_config(Strategy::kHonest, 9).norm, t), a);
}

TEST(RunSession, CheatersRejected) {
  for (Strategy s : {Strategy::kOverNorm, Strategy::kBitCheater, Strategy::kShiftConstant}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EXPECT_FALSE(run_session(base_config(s, seed)).verdict.accept) << to_string(s) << " " << seed;
    }
  }
}

TEST(RunSession, NonInteractiveModes) {
  auto cfg = base_config(Strategy::kHonest, 3);
  cfg.non_interactive = true;
  EXPECT_TRUE(run_session(cfg).verdict.accept);
  cfg.strategy = Strategy::kOverNorm;
  EXPECT_FALSE(run_session(cfg).verdict.accept);
}

TEST(RunSession, DzkRejectsStatisticalOnlyStrategies) {
  SessionConfig c;
  c.variant = Variant::kDzk;
  c.dzk = with_field(dzk_params(1.0, 0.1, 1u << 10, 8), Field::f64(), 1);
  c.x = to_field(c.dzk.field, vector_with_squared_norm(8, 1u << 10));
  EXPECT_TRUE(run_session(c).verdict.accept);
  c.strategy = Strategy::kBitCheater;
  EXPECT_THROW(run_session(c), std::invalid_argument);
}

}  // namespace
}  // namespace pine
