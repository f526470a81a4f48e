#include "pine/quadratic.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pine {
namespace {

// x1 * x2 = x3, x1 and x2 bits: a tiny system with a known satisfying set.
ConstraintSystem product_system(const Field& f) {
  ConstraintSystem sys;
  sys.n = 3;
  QuadraticConstraint prod;
  prod.terms.push_back({1, 2, f.one()});
  prod.terms.push_back({0, 3, f.neg(f.one())});
  prod.target = f.zero();
  sys.constraints.push_back(prod);
  sys.constraints.push_back(bit_constraint(f, 1));
  sys.constraints.push_back(bit_constraint(f, 2));
  return sys;
}

std::vector<Fe> with_one(const Field& f, std::vector<Fe> x) {
  x.insert(x.begin(), f.one());
  return x;
}

TEST(Quadratic, BlockCount) {
  EXPECT_EQ(block_count(0), 1u);
  EXPECT_EQ(block_count(1), 1u);
  EXPECT_EQ(block_count(4), 2u);
  EXPECT_EQ(block_count(5), 3u);
  EXPECT_EQ(block_count(1000000), 1000u);
  EXPECT_EQ(block_count(1000001), 1001u);
}

TEST(Quadratic, LagrangeBasisReproducesLowDegreePolynomials) {
  const Field f(257);
  for (u128 x = 5; x < 257; x += 17) {
    const auto lam = lagrange_basis_at(f, 5, Fe{x});
    Fe sum = f.zero(), first = f.zero(), second = f.zero();
    for (u128 s = 0; s < 5; ++s) {
      sum = f.add(sum, lam[s]);
      first = f.add(first, f.mul(lam[s], Fe{s}));
      second = f.add(second, f.mul(lam[s], Fe{s * s}));
    }
    EXPECT_EQ(sum, f.one());
    EXPECT_EQ(first, Fe{x});
    EXPECT_EQ(second, f.mul(Fe{x}, Fe{x}));
  }
  EXPECT_THROW(lagrange_basis_at(f, 5, Fe{3}), std::invalid_argument);
}

TEST(Quadratic, InterpolationRecoversCoefficients) {
  const Field f = Field::f64();
  // 3 + 2x + x^2 - 5x^4 at x = 0..4
  const std::vector<Fe> c{Fe{3}, Fe{2}, Fe{1}, Fe{0}, f.from_int(-5)};
  std::vector<Fe> y;
  for (u128 s = 0; s < 5; ++s) y.push_back(horner(f, c, Fe{s}));
  EXPECT_EQ(interpolate_coefficients(f, y), c);
}

TEST(Quadratic, PlainProofEncodesTheInnerProduct) {
  const Field f = Field::f64();
  Rng rng(1);
  std::vector<Fe> u, v;
  Fe ip = f.zero();
  for (int i = 0; i < 11; ++i) {
    u.push_back(rng.uniform(f));
    v.push_back(rng.uniform(f));
    ip = f.add(ip, f.mul(u.back(), v.back()));
  }
  const InnerProductProof pr = prove_inner_product_plain(f, u, v, rng);
  ASSERT_EQ(pr.L, 4u);
  EXPECT_EQ(pr.element_count(), 4u * 4u + 1u);
  Fe sum = f.zero();
  for (u128 t = 1; t <= pr.L; ++t) sum = f.add(sum, horner(f, pr.h, Fe{t}));
  EXPECT_EQ(sum, ip);
}

TEST(Quadratic, HonestProverIsAccepted) {
  const Field f = Field::f64();
  const ConstraintSystem sys = product_system(f);
  Rng prover(2), coins(3), sharer(4);
  for (auto x : {std::vector<Fe>{Fe{1}, Fe{1}, Fe{1}}, std::vector<Fe>{Fe{0}, Fe{1}, Fe{0}}}) {
    ASSERT_TRUE(all_satisfied(f, sys, with_one(f, x)));
    const auto sh = share_vector(f, x, sharer);
    EXPECT_TRUE(run_quadratic_protocol(f, sys, x, sh, 2, prover, coins));
  }
}

TEST(Quadratic, UnsatisfiedAssignmentIsRejected) {
  const Field f = Field::f64();
  const ConstraintSystem sys = product_system(f);
  Rng prover(5), coins(6), sharer(7);
  const std::vector<Fe> x{Fe{1}, Fe{1}, Fe{0}};
  ASSERT_FALSE(all_satisfied(f, sys, with_one(f, x)));
  const auto sh = share_vector(f, x, sharer);
  for (int i = 0; i < 20; ++i) EXPECT_FALSE(run_quadratic_protocol(f, sys, x, sh, 1, prover, coins));
  // A constant shift fixes the linear check but not the polynomial identity.
  auto shift = [](const Field& ff, InnerProductProof& p, Fe gap, Rng&) { shift_constant(ff, p, gap); };
  for (int i = 0; i < 20; ++i) EXPECT_FALSE(run_quadratic_protocol(f, sys, x, sh, 1, prover, coins, shift));
}

// With planted roots the proof passes exactly when rho hits one of 2L roots.
TEST(Quadratic, PlantedRootsPassAtTheExpectedRate) {
  const Field f(257);
  const ConstraintSystem sys = product_system(f);
  const std::vector<Fe> x{Fe{1}, Fe{1}, Fe{0}};
  Rng prover(8), coins(9), sharer(10);
  const auto sh = share_vector(f, x, sharer);
  const InnerProductCheat cheat = [](const Field& ff, InnerProductProof& p, Fe gap, Rng& r) {
    plant_roots(ff, p, gap, r);
  };
  const int n = 20000;
  int accepts = 0;
  for (int i = 0; i < n; ++i) accepts += run_quadratic_protocol(f, sys, x, sh, 1, prover, coins, cheat);
  const double expected = 4.0 / 254.0;  // L = 2: 2L roots among q - L - 1 points
  EXPECT_NEAR(accepts / static_cast<double>(n), expected, 5 * std::sqrt(expected / n));
}

// The evaluations a verifier sees are uniform: each f_j passes through a
// fresh random point.
TEST(Quadratic, ExchangedEvaluationsAreUniform) {
  const Field f(257);
  const ConstraintSystem sys = product_system(f);
  const std::vector<Fe> x{Fe{1}, Fe{1}, Fe{1}};
  Rng prover(11), coins(12), sharer(13);
  std::vector<int> counts(257, 0);
  const int n = 257 * 60;
  for (int i = 0; i < n; ++i) {
    const auto sh = share_vector(f, x, sharer);
    const Fe rc = coins.uniform(f);
    const auto proof = prove_quadratic(f, sys, x, rc, prover);
    const Fe rho = sample_rho(f, proof[0].L, coins);
    const auto e0 = quadratic_exchange(f, sys, sh[0], rc, proof[0], rho);
    const auto e1 = quadratic_exchange(f, sys, sh[1], rc, proof[1], rho);
    counts[static_cast<std::size_t>(f.add(e0.f_rho[0], e1.f_rho[0]).v)]++;
  }
  double chi = 0;
  for (int c : counts) chi += std::pow(c - 60.0, 2) / 60.0;
  EXPECT_LT(chi, 331.7);  // 99.9% quantile, 256 degrees of freedom
}

TEST(Quadratic, ValidateCatchesBadIndices) {
  const Field f(257);
  ConstraintSystem sys = product_system(f);
  EXPECT_NO_THROW(sys.validate());
  sys.constraints[0].terms.push_back({4, 1, f.one()});
  EXPECT_THROW(sys.validate(), std::invalid_argument);
}

TEST(Quadratic, SoundnessBoundFormula) {
  EXPECT_NEAR(quadratic_soundness_bound(4, 1, 257, 1), 4.0 / 255.0 + 1.0 / 257.0, 1e-15);
  EXPECT_NEAR(quadratic_soundness_bound(4, 1, 257, 2), std::pow(4.0 / 255.0 + 1.0 / 257.0, 2), 1e-15);
}

}  // namespace
}  // namespace pine
