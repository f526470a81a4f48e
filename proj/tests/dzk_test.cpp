#include "pine/dzk.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "pine/error.hpp"
#include "pine/harness.hpp"

namespace pine {
namespace {

TEST(GaussianC, ClosedForm) {
  EXPECT_NEAR(gaussian_c(0.1, std::exp2(-51)), 84.34885862875848, 1e-9);
  EXPECT_NEAR(gaussian_c(1.0, 1e-5), 4.844805262605389, 1e-9);
}

TEST(GaussianC, AnalyticCalibration) {
  EXPECT_NEAR(gaussian_c(1.0, 1e-5, Calibration::kAnalytic), 3.730631634815946, 1e-6);
  EXPECT_NEAR(gaussian_c(0.1, std::exp2(-51), Calibration::kAnalytic), 72.37051261907288, 1e-5);
}

TEST(GaussianC, AnalyticNeverExceedsClosedForm) {
  for (double eps : {0.05, 0.3, 0.9}) {
    for (double delta : {1e-3, 1e-8, 1e-15}) {
      EXPECT_LE(gaussian_c(eps, delta, Calibration::kAnalytic), gaussian_c(eps, delta)) << eps << " " << delta;
    }
  }
}

TEST(DzkParams, DerivedConstants) {
  const auto p = dzk_params(0.1, std::exp2(-50), std::uint64_t{1} << 30, 100);
  EXPECT_NEAR(p.c, 84.34885862875848, 1e-9);
  EXPECT_NEAR(p.sigma, p.c * 32768.0, 1e-6);
  EXPECT_NEAR(p.Delta / 2279089047530458.9056, 1.0, 1e-15);
  EXPECT_NEAR(p.Lambda, 47772583.69221516, 1e-6);
  // Oracle evaluated at the binary value of eps = 0.1, where Lambda^2 = ...701.76.
  EXPECT_EQ(p.q_min, u128{9128879010518808ULL});
  EXPECT_EQ(p.lambda_sq, u128{2282219752629701ULL});
  EXPECT_EQ(p.q_min_bits, 54u);
}

TEST(DzkParams, RejectsBadInputs) {
  EXPECT_THROW(dzk_params(0, 0.1, 10, 10), std::invalid_argument);
  EXPECT_THROW(dzk_params(0.5, 1.0, 10, 10), std::invalid_argument);
  EXPECT_THROW(dzk_params(0.5, 0.1, 0, 10), std::invalid_argument);
}

TEST(DzkParams, FieldMustExceedFourLambdaSquared) {
  const auto p = dzk_params(1.0, 0.1, 100, 100);
  EXPECT_THROW(with_field(p, Field(12289), 1), InfeasibleParams);
  EXPECT_NO_THROW(with_field(p, Field(4294967291u), 1));
  const auto big = dzk_params(0.1, std::exp2(-50), std::uint64_t{1} << 40, 1000000);
  EXPECT_THROW(with_field(big, Field::f64(), 1), InfeasibleParams);
  EXPECT_NO_THROW(with_field(big, Field::f128(), 1));
}

TEST(DzkParams, SelectMeetsSoundness) {
  const auto p = select_dzk_params(1.0, 0.01, 1u << 20, 200, Field::f64(), std::exp2(-100));
  EXPECT_LE(std::log2(dzk_soundness_error(p)), -100);
  EXPECT_EQ(p.t, 2u);
}

TEST(Sampler, RespectsCapAndRejectionRate) {
  const double delta = 0.1;
  const std::size_t d = 100;
  const double sigma = 25.0;
  const double Delta = truncation_cap(d, sigma, delta);
  Rng rng(11);
  std::size_t rejections = 0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const auto r = sample_truncated_gaussian(d, sigma, Delta, rng, &rejections);
    double sq = 0;
    for (double v : r) sq += v * v;
    ASSERT_LE(sq, Delta);
  }
  EXPECT_LE(static_cast<double>(rejections) / (draws + rejections), delta / (8 * std::exp(1.0)) + 0.003);
}

TEST(Sampler, MomentsMatchGaussian) {
  Rng rng(12);
  const double sigma = 3.0;
  double sum = 0, sq = 0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    for (double v : sample_truncated_gaussian(10, sigma, 1e9, rng)) {
      sum += v;
      sq += v * v;
    }
  }
  const double count = 10.0 * n;
  EXPECT_NEAR(sum / count, 0.0, 5 * sigma / std::sqrt(count));
  EXPECT_NEAR(sq / count, sigma * sigma, 5 * sigma * sigma * std::sqrt(2.0 / count));
}

TEST(Sampler, GivesUpAfterMaxTries) {
  Rng rng(1);
  EXPECT_THROW(sample_truncated_gaussian(100, 10.0, 1.0, rng, nullptr, 5), std::runtime_error);
}

TEST(Sharing, SharesReconstructAndStayUnderCap) {
  const auto p = with_field(dzk_params(1.0, 0.1, 400, 50), Field::f64(), 1);
  const auto x = to_field(p.field, vector_with_squared_norm(50, 400));
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto s = dzk_share(p, x, rng);
    EXPECT_TRUE(share_norm_ok(p, s[0]));
    EXPECT_TRUE(share_norm_ok(p, s[1]));
    for (std::size_t k = 0; k < 50; ++k) EXPECT_EQ(p.field.add(s[0].values[k], s[1].values[k]), x[k]);
  }
}

TEST(Sharing, NormCapCheck) {
  const auto p = with_field(dzk_params(1.0, 0.1, 400, 50), Field::f64(), 1);
  ShareVector s{0, std::vector<Fe>(50, p.field.zero())};
  EXPECT_TRUE(share_norm_ok(p, s));
  s.values[0] = p.field.from_int(-static_cast<i128>(std::ceil(p.Lambda)) - 1);
  EXPECT_FALSE(share_norm_ok(p, s));
}

TEST(Constraints, Shape) {
  const auto p = with_field(dzk_params(1.0, 0.1, 1000, 20), Field::f64(), 1);
  const auto sys = dzk_constraints(p);
  EXPECT_NO_THROW(sys.validate());
  EXPECT_EQ(sys.n, dzk_variable_count(p));
  EXPECT_EQ(sys.n, 20 + 2 * p.b_sq);
  EXPECT_EQ(sys.m(), 1 + 2 * p.b_sq);
}

TEST(Interactive, HonestAlwaysAccepts) {
  const auto p = with_field(dzk_params(1.0, 0.1, 1u << 16, 40), Field::f64(), 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng draw(seed);
    const auto a = over_norm(p, -static_cast<std::int64_t>(draw.below(std::uint64_t{100})), draw);
    Rng coins(seed + 100);
    const auto v = run_dzk_interactive(p, a.x, Rng(seed), coins);
    EXPECT_TRUE(v.accept) << to_string(v.cause);
  }
}

TEST(Interactive, OverNormRejected) {
  const auto p = with_field(dzk_params(1.0, 0.1, 1u << 16, 40), Field::f64(), 1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng adv(seed);
    const auto a = over_norm(p, 1, adv);
    Rng coins(seed + 7);
    EXPECT_FALSE(run_dzk_interactive(p, a.x, Rng(seed), coins, a.dzk_hooks).accept);
  }
}

TEST(Serialization, RoundTrip) {
  const auto p = with_field(dzk_params(1.0, 0.1, 1u << 16, 40), Field::f64(), 1);
  const auto x = to_field(p.field, vector_with_squared_norm(40, 1u << 16));
  Rng coins(3);
  DzkTranscript tr;
  ASSERT_TRUE(run_dzk_interactive(p, x, Rng(3), coins, {}, &tr).accept);
  for (int j = 0; j < 2; ++j) {
    const auto b3 = serialize(p.field, tr.msg3[j]);
    EXPECT_EQ(serialize(p.field, deserialize_dzk_msg3(p, b3)), b3);
    const auto be = serialize(p.field, tr.exchange[j]);
    EXPECT_EQ(serialize(p.field, deserialize_dzk_exchange(p, be)), be);
  }
  EXPECT_THROW(deserialize_dzk_msg3(p, std::vector<std::uint8_t>{1, 2}), FormatError);
}

}  // namespace
}  // namespace pine
