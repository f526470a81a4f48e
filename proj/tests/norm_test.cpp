#include "pine/norm.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pine/binomial.hpp"
#include "pine/error.hpp"
#include "pine/harness.hpp"

namespace pine {
namespace {

const double kEta = std::exp2(kDefaultEtaLog2);

NormParams small_params(std::size_t d = 20, std::uint64_t B = 1u << 20, unsigned t = 1) {
  return make_norm_params(Field::f64(), d, B, 51, 51, t, kEta);
}

std::vector<Fe> honest_input(const NormParams& p, std::uint64_t seed) {
  Rng rng(seed);
  const auto a = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p.B) / static_cast<double>(p.d)));
  std::vector<std::int64_t> x(p.d);
  for (auto& e : x) e = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * a + 1))) - a;
  return to_field(p.field, x);
}

TEST(SelectParams, FiftyBitRow) {
  const auto p = select_params(1000000, std::uint64_t{1} << 30, Field::f64(), std::exp2(-50), std::exp2(-50));
  EXPECT_EQ(p.t, 1u);
  EXPECT_EQ(p.r, 51u);
  EXPECT_EQ(p.tau_r, 51u);
  EXPECT_NEAR(p.wrap.alpha_hat, 7.99996948, 1e-6);
  EXPECT_LE(soundness_error(p), std::exp2(-50));
  EXPECT_LE(completeness_error(p), std::exp2(-50));
}

TEST(SelectParams, HundredBitRow) {
  const auto p = select_params(1000, std::uint64_t{1} << 30, Field::f64(), std::exp2(-100), std::exp2(-100));
  EXPECT_EQ(p.t, 2u);
  EXPECT_EQ(p.r, 107u);
  EXPECT_EQ(p.tau_r, 106u);
  EXPECT_NEAR(p.wrap.tau(), 0.9907, 5e-5);
  EXPECT_NEAR(std::log2(completeness_error(p)), -170.19416891363434, 1e-6);
}

TEST(SelectParams, ChosenParamsMeetTargetsAcrossGrid) {
  for (std::size_t d : {10u, 1000u, 100000u}) {
    for (double bits : {20.0, 40.0, 64.0}) {
      const auto p = select_params(d, std::uint64_t{1} << 24, Field::f64(), std::exp2(-bits), std::exp2(-bits));
      EXPECT_LE(std::log2(soundness_error(p)), -bits + 1e-9) << d << " " << bits;
      EXPECT_LE(std::log2(completeness_error(p)), -bits + 1e-9) << d << " " << bits;
      EXPECT_TRUE(theorem_field_ok(p));
    }
  }
}

TEST(SelectParams, FsMarginTightensSoundness) {
  SelectOptions opt;
  opt.fs_margin_bits = kFsMarginBits;
  const auto p = select_params(1000, 1u << 30, Field::f64(), std::exp2(-50), std::exp2(-50), opt);
  EXPECT_LE(std::log2(soundness_error(p)), -64 + 1e-9);
}

TEST(SelectParams, InfeasibleCases) {
  EXPECT_THROW(select_params(100, 1u << 20, Field(12289), std::exp2(-50), std::exp2(-50)), InfeasibleParams);
  SelectOptions opt;
  opt.max_r = 10;
  EXPECT_THROW(select_params(100, 1u << 20, Field::f64(), std::exp2(-50), std::exp2(-50), opt), InfeasibleParams);
  EXPECT_THROW(select_params(100, 1u << 20, Field::f64(), 0.0, 0.5), std::invalid_argument);
}

TEST(Theorem, ChernoffClauseDominatesExactTail) {
  for (std::size_t r : {51u, 107u, 300u}) {
    const auto p = make_norm_params(Field::f64(), 100, 1u << 30, r, r, 1, kEta);
    EXPECT_GE(theorem_soundness_bound(p), soundness_error(p));
  }
}

TEST(Theorem, FieldConditionTerms) {
  const auto p = small_params();
  const double bl = static_cast<double>(p.B) * std::log(2 / kEta);
  EXPECT_GE(theorem_q_min(p), 81 * bl);
  EXPECT_GE(theorem_q_min(p), 2600 * std::sqrt(bl));
  EXPECT_THROW(make_norm_params(Field(12289), 20, 1u << 20, 51, 51, 1, kEta), std::invalid_argument);
  EXPECT_NO_THROW(make_norm_params(Field(12289), 20, 100, 51, 51, 1, 0.05, false));
}

TEST(Layout, VariableBlocks) {
  const auto p = small_params();
  const auto l = var_layout(p);
  EXPECT_EQ(l.x, 1u);
  EXPECT_EQ(l.g, 1u + p.d);
  EXPECT_EQ(l.v, l.g + p.r);
  EXPECT_EQ(l.vp, l.v + p.r * p.wrap.b);
  EXPECT_EQ(l.up, l.vp + p.b_sq);
  EXPECT_EQ(l.n, p.d + p.r + p.r * p.wrap.b + 2 * p.b_sq);
}

TEST(Layout, PowerOfTwoBoundDropsUpperBits) {
  const auto p = make_norm_params(Field::f64(), 20, (1u << 20) - 1, 51, 51, 1, kEta);
  EXPECT_TRUE(p.sq_pow2);
  EXPECT_EQ(var_layout(p).n, p.d + p.r + p.r * p.wrap.b + p.b_sq);
}

TEST(Catalog, CountsWithinFormula) {
  const auto p = small_params();
  const auto c = constraint_catalog(p);
  EXPECT_EQ(c.n_vars, var_layout(p).n);
  EXPECT_LE(static_cast<double>(c.m_constraints), c.m_formula);
  EXPECT_LE(static_cast<double>(c.n_vars), c.n_formula);
}

TEST(Catalog, ConstraintSystemMatchesCatalog) {
  const auto p = small_params();
  Rng rng(3);
  const auto z = sample_challenge(p.r, p.d, rng);
  const auto sys = build_constraints(p, z);
  EXPECT_NO_THROW(sys.validate());
  EXPECT_EQ(sys.n, constraint_catalog(p).n_vars);
  EXPECT_EQ(sys.m(), constraint_catalog(p).m_constraints);
}

TEST(MessageSizes, ExactCounts) {
  const auto p = select_params(1000000, std::uint64_t{1} << 30, Field::f64(), std::exp2(-50), std::exp2(-50));
  const auto s = message_sizes(p);
  EXPECT_EQ(s.msg1, 2u * p.d * p.r);
  EXPECT_EQ(s.msg3, p.t * 64u);
  EXPECT_EQ(s.msg2, 69248u);
  EXPECT_EQ(s.msg4, 256320u);
  EXPECT_EQ(s.L, 1001u);
  EXPECT_EQ(s.msg4_elements, p.t * (4u * s.L + 1));
  EXPECT_LE(static_cast<double>(s.msg2), s.msg2_bound);
  EXPECT_EQ(s.input_shares, p.d * 64u);
}

TEST(Interactive, HonestSessionsAccept) {
  const auto p = small_params();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng coins(1000 + seed);
    const auto v = run_norm_interactive(p, honest_input(p, seed), Rng(seed), coins);
    EXPECT_TRUE(v.accept) << to_string(v.cause);
  }
}

TEST(Interactive, HonestWithTwoRepetitions) {
  const auto p = small_params(30, 1u << 16, 2);
  Rng coins(7);
  InteractiveTranscript tr;
  EXPECT_TRUE(run_norm_interactive(p, honest_input(p, 1), Rng(1), coins, {}, &tr).accept);
  EXPECT_EQ(tr.rcs.size(), 2u);
  EXPECT_EQ(tr.msg4[0].proofs.size(), 2u);
}

TEST(Interactive, ProverRefusesWrongLength) {
  const auto p = small_params();
  EXPECT_THROW(NormProver(p, std::vector<Fe>(p.d + 1), Rng(1)), std::invalid_argument);
}

TEST(Interactive, NonBitMaskIsRejected) {
  const auto p = small_params();
  ProverHooks hooks;
  hooks.assignment = [&](std::vector<Fe>& a, const WraparoundChallenge&) {
    const auto l = var_layout(p);
    a[l.v] = p.field.add(a[l.v], p.field.from_int(2));
  };
  Rng coins(5);
  const auto v = run_norm_interactive(p, honest_input(p, 2), Rng(2), coins, hooks);
  EXPECT_FALSE(v.accept);
}

TEST(Interactive, WrongSuccessCountIsRejected) {
  const auto p = small_params();
  ProverHooks hooks;
  hooks.assignment = [&](std::vector<Fe>& a, const WraparoundChallenge&) { a[var_layout(p).g] = p.field.zero(); };
  Rng coins(5);
  const auto v = run_norm_interactive(p, honest_input(p, 2), Rng(2), coins, hooks);
  EXPECT_FALSE(v.accept);
  EXPECT_EQ(v.cause, RejectCause::kSuccessCount);
}

TEST(Interactive, OverNormInputIsRejected) {
  const auto p = small_params(20, 1000);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng adv(seed);
    const auto a = over_norm(p, 1, adv);
    Rng coins(seed + 50);
    EXPECT_FALSE(run_norm_interactive(p, a.x, Rng(seed), coins, a.hooks).accept);
  }
}

TEST(Shapes, Checks) {
  const auto p = small_params();
  NormProver prover(p, honest_input(p, 4), Rng(4));
  prover.share_input();
  Rng coins(1);
  const auto z = sample_challenge(p.r, p.d, coins);
  auto m2 = prover.round2(z);
  ASSERT_TRUE(m2.has_value());
  EXPECT_NO_THROW(check_msg2_shape(p, (*m2)[0]));
  auto bad = (*m2)[0];
  bad.wrap.g.pop_back();
  EXPECT_THROW(check_msg2_shape(p, bad), std::invalid_argument);

  auto m4 = prover.round4(std::vector<Fe>{coins.uniform(p.field)});
  EXPECT_NO_THROW(check_msg4_shape(p, m4[1]));
  m4[1].proofs.clear();
  EXPECT_THROW(check_msg4_shape(p, m4[1]), std::invalid_argument);
  EXPECT_THROW(prover.round4(std::vector<Fe>{}), std::invalid_argument);
}

TEST(Serialization, MessagesRoundTrip) {
  const auto p = small_params();
  Rng coins(9);
  InteractiveTranscript tr;
  ASSERT_TRUE(run_norm_interactive(p, honest_input(p, 9), Rng(9), coins, {}, &tr).accept);
  for (int j = 0; j < 2; ++j) {
    const auto b2 = serialize(p.field, tr.msg2[j]);
    EXPECT_EQ(serialize(p.field, deserialize_msg2(p, j, b2)), b2);
    const auto b4 = serialize(p.field, tr.msg4[j]);
    EXPECT_EQ(serialize(p.field, deserialize_msg4(p, b4)), b4);
    const auto be = serialize(p.field, tr.exchange[j]);
    EXPECT_EQ(serialize(p.field, deserialize_exchange(p, be)), be);
  }
  auto b2 = serialize(p.field, tr.msg2[0]);
  b2.pop_back();
  EXPECT_THROW(deserialize_msg2(p, 0, b2), FormatError);
  EXPECT_THROW(deserialize_msg4(p, std::vector<std::uint8_t>(3)), FormatError);
}

TEST(SquaredNorm, SignedRepresentatives) {
  const Field f = Field::f64();
  const std::vector<std::int64_t> x{3, -4, 0, 12};
  EXPECT_EQ(squared_norm(f, to_field(f, x)), u128{169});
}

}  // namespace
}  // namespace pine
