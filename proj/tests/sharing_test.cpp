#include "pine/sharing.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "pine/error.hpp"
#include "pine/random.hpp"

namespace pine {
namespace {

TEST(Rng, SeededStreamsReplay) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  Rng d(42), e(43);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += d() == e();
  EXPECT_EQ(same, 0);
}

TEST(Rng, DeriveDependsOnKeyNotPosition) {
  Rng a(5);
  const Rng fresh = a.derive("x");
  for (int i = 0; i < 1000; ++i) a();
  Rng later = a.derive("x");
  Rng first = fresh;
  for (int i = 0; i < 10; ++i) EXPECT_EQ(first(), later());
  Rng y = Rng(5).derive("y");
  Rng x = Rng(5).derive("x");
  EXPECT_NE(x(), y());
}

TEST(Rng, BelowIsUniform) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) counts[rng.below(std::uint64_t{7})]++;
  double chi = 0;
  for (int c : counts) chi += std::pow(c - n / 7.0, 2) / (n / 7.0);
  EXPECT_LT(chi, 22.46);  // 99.9% quantile, 6 degrees of freedom
  EXPECT_THROW(rng.below(std::uint64_t{0}), std::invalid_argument);
}

TEST(Sharing, ReconstructsAndIsLinear) {
  const Field f = Field::f64();
  Rng rng(1);
  std::vector<Fe> x{Fe{1}, Fe{2}, f.from_int(-5), Fe{0}};
  const auto sh = share_vector(f, x, rng);
  EXPECT_EQ(reconstruct(f, sh[0], sh[1]), x);
  const std::vector<Fe> alpha{Fe{3}, Fe{1}, Fe{2}, Fe{9}};
  const Share z0 = local_linear(f, alpha, sh[0]);
  const Share z1 = local_linear(f, alpha, sh[1]);
  EXPECT_TRUE(linear_equality_check(f, z0, z1, f.from_int(3 + 2 - 10)));
  EXPECT_FALSE(linear_equality_check(f, z0, z1, f.from_int(-4)));
}

TEST(Sharing, ReconstructRejectsSameVerifier) {
  const Field f(257);
  EXPECT_THROW(reconstruct(f, Share{0, Fe{1}}, Share{0, Fe{2}}), std::invalid_argument);
}

// At q = 17 every value of share 0 is equally likely for a fixed secret.
TEST(Sharing, SingleShareIsUniform) {
  const Field f(17);
  Rng rng(3);
  for (u128 secret : {u128{0}, u128{16}}) {
    std::vector<int> counts(17, 0);
    const int n = 34000;
    for (int i = 0; i < n; ++i) {
      const auto [s0, s1] = share(f, Fe{secret}, rng);
      counts[static_cast<std::size_t>(s1.value.v)]++;
      (void)s0;
    }
    double chi = 0;
    for (int c : counts) chi += std::pow(c - n / 17.0, 2) / (n / 17.0);
    EXPECT_LT(chi, 39.25);  // 99.9% quantile, 16 degrees of freedom
  }
}

// share_with is a bijection r -> (r, x - r): the joint view of one verifier
// is identical for every secret, which is the simulator argument.
TEST(Sharing, ViewOfOneVerifierIsIndependentOfSecret) {
  const Field f(17);
  for (u128 x = 0; x < 17; ++x) {
    std::map<u128, int> seen;
    for (u128 r = 0; r < 17; ++r) seen[share_with(f, Fe{x}, Fe{r}).second.value.v]++;
    EXPECT_EQ(seen.size(), 17u);
  }
}

TEST(Sharing, SerializationRoundTrip) {
  const Field f = Field::f64();
  Rng rng(2);
  const std::vector<Fe> x{Fe{7}, Fe{8}};
  const auto sh = share_vector(f, x, rng);
  const auto bytes = serialize(f, sh[1]);
  const ShareVector back = deserialize_share_vector(f, bytes);
  EXPECT_EQ(back.verifier, 1);
  EXPECT_EQ(back.values, sh[1].values);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(deserialize_share_vector(f, truncated), FormatError);
}

}  // namespace
}  // namespace pine
