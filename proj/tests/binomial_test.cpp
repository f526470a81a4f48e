#include "pine/binomial.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace pine {
namespace {

// Reference values from exact rational sums (mpmath, 60 digits).
TEST(Binomial, SoundnessTailsMatchReference) {
  EXPECT_NEAR(log2_err_sound(107, 106), -100.24511249783653, 1e-9);
  EXPECT_NEAR(log2_err_sound(108, 107), -101.23181567522307, 1e-9);
  EXPECT_DOUBLE_EQ(log2_err_sound(51, 51), -51.0);
  EXPECT_NEAR(err_sound(107, 106), 108.0 * std::exp2(-107.0), 1e-40);
}

TEST(Binomial, GeneralTailsMatchReference) {
  EXPECT_NEAR(binomial_upper_tail(10, 7, 0.3), 0.0105920784, 1e-12);
  EXPECT_NEAR(binomial_upper_tail(100, 60, 0.5), 0.028443966820490395, 1e-13);
  EXPECT_DOUBLE_EQ(binomial_upper_tail(10, 0, 0.3), 1.0);
  EXPECT_EQ(binomial_upper_tail(10, 11, 0.3), 0.0);
  EXPECT_TRUE(std::isinf(log2_binomial_upper_tail(10, 11, 0.3)));
}

TEST(Binomial, CompletenessAtDefaultEta) {
  const double eta_hat = 3.20918838212184484604e-28;
  EXPECT_NEAR(log2_err_complete(51, 51, eta_hat), -85.65935283532784, 1e-8);
  EXPECT_NEAR(log2_err_complete(107, 106, eta_hat), -170.19416891363434, 1e-8);
}

TEST(Binomial, TailIsMonotoneInThreshold) {
  for (std::size_t k = 1; k < 60; ++k) EXPECT_GE(err_sound(60, k), err_sound(60, k + 1));
}

TEST(Binomial, TauCount) {
  EXPECT_EQ(tau_count(107, 0.9907), 106u);
  EXPECT_EQ(tau_count(51, 1.0), 51u);
  EXPECT_THROW(tau_count(107, 0.95), std::invalid_argument);
  EXPECT_THROW(tau_count(10, 0.5), std::invalid_argument);
}

}  // namespace
}  // namespace pine
