// Parameter selection against the published verbose table (q = 2^64 - 2^32 + 1,
// B = 2^30, eta = 2^-91.33).

#include <gtest/gtest.h>

#include <cmath>

#include "pine/norm.hpp"

namespace pine {
namespace {

struct Row {
  int rho_bits;
  int delta_bits;
  std::size_t d;
  unsigned t;
  std::size_t r;
  double tau;
};

std::ostream& operator<<(std::ostream& os, const Row& r) {
  return os << "rho=2^-" << r.rho_bits << " delta=2^-" << r.delta_bits << " d=" << r.d;
}

const Row kRows[] = {
    {50, 50, 10000, 1, 51, 1.0},       {50, 50, 100000, 1, 51, 1.0},       {50, 50, 1000000, 1, 51, 1.0},
    {50, 50, 10000000, 1, 51, 1.0},    {50, 100, 10000, 1, 56, 0.9821},    {50, 100, 100000, 1, 57, 0.9825},
    {50, 100, 1000000, 1, 57, 0.9825}, {50, 100, 10000000, 1, 57, 0.9825}, {50, 200, 10000, 1, 62, 0.9677},
    {50, 200, 100000, 1, 62, 0.9677},  {50, 200, 1000000, 1, 62, 0.9677},  {50, 200, 10000000, 1, 62, 0.9677},
    {100, 50, 10000, 2, 101, 1.0},     {100, 50, 100000, 2, 101, 1.0},     {100, 50, 1000000, 2, 101, 1.0},
    {100, 50, 10000000, 2, 101, 1.0},  {100, 100, 10000, 2, 107, 0.9907},  {100, 100, 100000, 2, 107, 0.9907},
    {100, 100, 1000000, 2, 107, 0.9907}, {100, 100, 10000000, 2, 108, 0.9907}, {100, 200, 10000, 2, 113, 0.9823},
    {100, 200, 100000, 2, 113, 0.9823}, {100, 200, 1000000, 2, 113, 0.9823}, {100, 200, 10000000, 2, 113, 0.9823},
    {200, 50, 10000, 4, 201, 1.0},     {200, 50, 100000, 4, 201, 1.0},     {200, 50, 1000000, 4, 201, 1.0},
    {200, 50, 10000000, 4, 201, 1.0},  {200, 100, 10000, 4, 208, 0.9952},  {200, 100, 100000, 4, 208, 0.9952},
    {200, 100, 1000000, 4, 208, 0.9952}, {200, 100, 10000000, 4, 208, 0.9952}, {200, 200, 10000, 4, 215, 0.9907},
    {200, 200, 100000, 4, 215, 0.9907}, {200, 200, 1000000, 4, 215, 0.9907}, {200, 200, 10000000, 4, 215, 0.9907},
};

class VerboseTable : public ::testing::TestWithParam<Row> {};

// The selected t always agrees. The selected r agrees, or exceeds the
// table by one repetition when the table's (r, tau) misses the soundness or
// completeness target under this library's evaluation of the bound.
TEST_P(VerboseTable, SelectionMatchesOrIsJustified) {
  const Row& row = GetParam();
  const double rho = std::exp2(-row.rho_bits);
  const double delta = std::exp2(-row.delta_bits);
  const auto p = select_params(row.d, std::uint64_t{1} << 30, Field::f64(), rho, delta);
  EXPECT_EQ(p.t, row.t);
  if (p.r == row.r) {
    EXPECT_NEAR(p.wrap.tau(), row.tau, 5e-5);
    return;
  }
  EXPECT_EQ(p.r, row.r + 1);
  const auto tau_r = static_cast<std::size_t>(std::lround(row.tau * static_cast<double>(row.r)));
  const auto table = make_norm_params(Field::f64(), row.d, std::uint64_t{1} << 30, row.r, tau_r, row.t,
                                      std::exp2(kDefaultEtaLog2));
  EXPECT_TRUE(soundness_error(table) > rho || completeness_error(table) > delta)
      << "table row meets both targets, yet a larger r was chosen";
}

INSTANTIATE_TEST_SUITE_P(Rows, VerboseTable, ::testing::ValuesIn(kRows));

TEST(VerboseTable, RowsMatchingExactly) {
  int matches = 0;
  for (const Row& row : kRows) {
    const auto p = select_params(row.d, std::uint64_t{1} << 30, Field::f64(), std::exp2(-row.rho_bits),
                                 std::exp2(-row.delta_bits));
    matches += p.t == row.t && p.r == row.r;
  }
  EXPECT_EQ(matches, 32);
}

}  // namespace
}  // namespace pine
