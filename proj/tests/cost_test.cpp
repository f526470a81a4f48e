#include "pine/cost.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pine {
namespace {

constexpr std::uint64_t kB = std::uint64_t{1} << 30;
const double k50 = std::exp2(-50);

TEST(FsBits, TwoDigestsPerRound) {
  EXPECT_EQ(fs_bits(3), 1536u);
  EXPECT_EQ(fs_bits(2), 1024u);
  FsConfig cfg;
  cfg.kappa = 128;
  EXPECT_EQ(fs_bits(1, cfg), 256u);
}

TEST(CostStatistical, AccountingAddsUp) {
  const auto c = cost_statistical(10000, kB, Field::f64(), k50, k50);
  EXPECT_EQ(c.baseline_bits, 640000u);
  EXPECT_EQ(c.input_bits, 640000u);
  EXPECT_EQ(c.client_bits, c.input_bits + c.proof_bits + c.ip_bits + c.fs_bits);
  EXPECT_DOUBLE_EQ(c.overhead, static_cast<double>(c.client_bits - c.baseline_bits) / c.baseline_bits);
  EXPECT_EQ(c.fs_bits, 1536u);
  EXPECT_EQ(c.r, 51u);
  EXPECT_EQ(c.t, 1u);
  EXPECT_GE(c.bound_overhead, c.overhead);
}

TEST(CostStatistical, SizeBoundRowMatchesHeadlineAtSmallDimension) {
  const auto c = cost_statistical(10000, kB, Field::f64(), k50, k50);
  EXPECT_NEAR(c.bound_overhead * 100, 22.0, 0.5);
}

TEST(IntroTable, StatisticalRow) {
  const auto rows = intro_table({10000, 100000, 1000000, 10000000}, kB, k50, k50, 0.1);
  ASSERT_EQ(rows.size(), 4u);
  const double headline[] = {22.0, 3.18, 0.49, 0.13};
  for (std::size_t i = 0; i < 4; ++i) {
    const double got = rows[i].statistical.overhead * 100;
    EXPECT_LE(std::abs(got - headline[i]) / headline[i], 0.35) << rows[i].d;
    EXPECT_DOUBLE_EQ(rows[i].prior_overhead, 15.0);
  }
  EXPECT_NEAR(rows[2].statistical.overhead * 100, 0.49, 0.05);
  EXPECT_NEAR(rows[3].statistical.overhead * 100, 0.13, 0.03);
}

TEST(IntroTable, OverheadFallsWithDimension) {
  const auto rows = intro_table({1000, 10000, 100000, 1000000}, kB, k50, k50, 0.1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].statistical.overhead, rows[i - 1].statistical.overhead);
  }
}

TEST(CostDzk, FieldWidthGrowsWithDimension) {
  const auto small = cost_dzk(0.1, k50, kB, 10000, 64, k50);
  const auto large = cost_dzk(0.1, k50, kB, 10000000, 64, k50);
  EXPECT_EQ(small.log_q, 64u);
  EXPECT_EQ(large.log_q, 69u);
  EXPECT_EQ(small.baseline_bits, 640000u);
  EXPECT_EQ(small.fs_bits, 1024u);
  EXPECT_GT(large.input_bits, large.baseline_bits);
}

TEST(Formatting, TablesMentionEveryRow) {
  const auto rows = intro_table({10000, 100000}, kB, k50, k50, 0.1);
  const auto intro = format_intro_table(rows);
  EXPECT_NE(intro.find("d=10^4"), std::string::npos);
  EXPECT_NE(intro.find("d=10^5"), std::string::npos);
  EXPECT_NE(intro.find("64*10^4"), std::string::npos);
  const auto verbose = format_verbose_table({rows[0].statistical, rows[1].statistical});
  EXPECT_NE(verbose.find("51"), std::string::npos);
}

TEST(OpModel, StatisticalMatchesInstrumentedRun) {
  for (std::size_t d : {100u, 1000u}) {
    const auto p = make_norm_params(Field::f64(), d, kB, 51, 51, 1, std::exp2(kDefaultEtaLog2));
    const auto model = analytic_prover_ops(p);
    const auto run = instrumented_prover_ops(p, 1);
    EXPECT_EQ(model.mul, run.mul) << d;
    EXPECT_NEAR(static_cast<double>(model.add) / static_cast<double>(run.add), 1.0, 0.01) << d;
  }
}

TEST(OpModel, DzkWithinTenPercent) {
  const auto p = with_field(dzk_params(1.0, 0.01, 1u << 20, 500), Field::f64(), 1);
  const auto model = analytic_prover_ops(p);
  const auto run = instrumented_prover_ops(p, 2);
  EXPECT_NEAR(static_cast<double>(model.mul) / static_cast<double>(run.mul), 1.0, 0.1);
  EXPECT_NEAR(static_cast<double>(model.add) / static_cast<double>(run.add), 1.0, 0.1);
}

}  // namespace
}  // namespace pine
