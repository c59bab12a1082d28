#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "support.hpp"

using namespace ordsev;
using namespace ordsev::testing;

namespace {

// Printed average marginal effects, rows in design-column order.
const std::array<std::array<double, 3>, 14> kPrintedEffects{{
    {-0.309, 0.289, 0.019}, {-0.243, 0.227, 0.015}, {-0.047, 0.044, 0.003},
    {-0.011, 0.010, 0.001}, {0.042, -0.039, -0.003}, {-0.011, 0.010, 0.001},
    {-0.047, 0.044, 0.003}, {-0.046, 0.043, 0.003}, {-0.022, 0.020, 0.001},
    {-0.130, 0.122, 0.008}, {-0.059, 0.055, 0.004}, {-0.090, 0.084, 0.006},
    {-0.019, 0.017, 0.001}, {0.076, -0.071, -0.005},
}};

DesignMatrix table4_sample(std::size_t n, std::uint64_t seed) {
  auto spec = table4_spec(n, seed);
  return encode_design(simulate(spec), spec.schema);
}

}  // namespace

TEST(AverageMarginalEffect, RowsSumToZero) {
  const auto d = table4_sample(5000, 3);
  const auto t = margins_table(table4_params(), d, {"PDO", "Injury", "Fatal"});
  ASSERT_EQ(t.rows.size(), 14u);
  for (const auto& row : t.rows) EXPECT_NEAR(row.row_sum(), 0.0, 1e-12) << row.category;
}

TEST(AverageMarginalEffect, ZeroSlopeGivesZeroEffect) {
  const auto d = table4_sample(500, 4);
  auto params = table4_params();
  params.beta[5] = 0.0;
  EXPECT_LT(average_marginal_effect(params, d, 5).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(AverageMarginalEffect, SignFlipOnSymmetricCutoffsMirrorsClasses) {
  // With cut-offs symmetric about zero, negating a slope mirrors the effect
  // vector when the rest of the index is zero.
  DesignMatrix d;
  d.num_classes = 3;
  d.columns = {{0, 1, "v", "a"}};
  d.x = RowMatrix::Zero(4, 1);
  d.x(1, 0) = 1.0;
  d.y = {0, 1, 2, 1};
  OrderedLogitParams p;
  p.beta = Eigen::VectorXd::Constant(1, 0.8);
  p.cutoffs = Eigen::Vector2d(-1.2, 1.2);
  auto q = p;
  q.beta[0] = -0.8;
  const auto up = average_marginal_effect(p, d, 0);
  const auto dn = average_marginal_effect(q, d, 0);
  EXPECT_NEAR(up[0], dn[2], 1e-15);
  EXPECT_NEAR(up[1], dn[1], 1e-15);
  EXPECT_NEAR(up[2], dn[0], 1e-15);
  EXPECT_LT(up[0], 0.0);
}

TEST(AverageMarginalEffect, SingleBaseRowIsProbabilityDifference) {
  auto schema = table4_schema();
  DesignMatrix d;
  d.num_classes = 3;
  d.columns = design_columns(*schema);
  d.x = RowMatrix::Zero(1, 14);
  d.y = {1};
  const auto params = table4_params();
  const auto ame = average_marginal_effect(params, d, 0);
  const std::vector<double> cuts{-0.357, 6.348};
  const auto treated = big_class_probabilities(2.553, cuts);
  const auto base = big_class_probabilities(0, cuts);
  for (int j = 0; j < 3; ++j)
    EXPECT_NEAR(ame[j], static_cast<double>(treated[j] - base[j]), 1e-15);
}

TEST(AverageMarginalEffect, IgnoresTheColumnsOwnCurrentValue) {
  // Sibling dummies are zeroed, so the row's current category of the same
  // variable does not matter.
  auto schema = table4_schema();
  DesignMatrix d;
  d.num_classes = 3;
  d.columns = design_columns(*schema);
  d.x = RowMatrix::Zero(1, 14);
  d.y = {1};
  const auto params = table4_params();
  const auto at_base = average_marginal_effect(params, d, 0);
  d.x(0, 1) = 1.0;  // Overturn
  EXPECT_LT((average_marginal_effect(params, d, 0) - at_base).norm(), 1e-15);
  d.x(0, 1) = 0.0;
  d.x(0, 0) = 1.0;
  EXPECT_LT((average_marginal_effect(params, d, 0) - at_base).norm(), 1e-15);
}

TEST(AverageMarginalEffect, MonotoneInSlopeMagnitude) {
  std::mt19937_64 rng(31);
  auto params = random_params(rng, 4, 3);
  const auto d = random_design(rng, 10, 4, params);
  double prev_low = 0.0, prev_high = 0.0;
  for (double b = 0.1; b < 4.0; b += 0.3) {
    params.beta[2] = b;
    const auto e = average_marginal_effect(params, d, 2);
    EXPECT_LT(e[0], prev_low);
    EXPECT_GT(e[2], prev_high);
    prev_low = e[0];
    prev_high = e[2];
  }
}

TEST(AverageMarginalEffect, WeightsMatchReplication) {
  std::mt19937_64 rng(32);
  const auto params = random_params(rng, 4, 3);
  const auto d = random_design(rng, 50, 4, params);
  std::vector<double> w(50);
  DesignMatrix rep = d;
  rep.x.resize(0, 4);
  std::vector<Eigen::Index> rows;
  for (std::size_t i = 0; i < 50; ++i) {
    w[i] = static_cast<double>(1 + i % 3);
    for (int r = 0; r < int(w[i]); ++r) rows.push_back(static_cast<Eigen::Index>(i));
  }
  rep.x = d.x(rows, Eigen::all);
  rep.y.assign(rows.size(), 0);
  for (std::size_t c = 0; c < 4; ++c)
    EXPECT_LT((average_marginal_effect(params, d, c, w) -
               average_marginal_effect(params, rep, c)).norm(), 1e-14);
  EXPECT_THROW(average_marginal_effect(params, d, 0, std::vector<double>(3, 1.0)), InputError);
  EXPECT_THROW(average_marginal_effect(params, d, 9), InputError);
}

TEST(MarginsTable, NoSlopesGivesEmptyTable) {
  DesignMatrix d;
  d.num_classes = 3;
  d.x = RowMatrix::Zero(5, 0);
  d.y = {0, 1, 2, 1, 1};
  OrderedLogitParams p;
  p.beta.resize(0);
  p.cutoffs = Eigen::Vector2d(-1.0, 1.0);
  EXPECT_TRUE(margins_table(p, d).rows.empty());
}

TEST(MarginsTable, PrintedRowsAreNearZeroSum) {
  // Rounded to three decimals the printed rows can only drift a little from 0.
  for (const auto& row : kPrintedEffects)
    EXPECT_LE(std::fabs(row[0] + row[1] + row[2]), 0.002 + 1e-12);
}

TEST(MarginsTable, SignsAgreeWithSlopes) {
  const auto d = table4_sample(20000, 5);
  const auto t = margins_table(table4_params(), d);
  for (std::size_t c = 0; c < t.rows.size(); ++c) {
    const double b = t.rows[c].coefficient;
    EXPECT_EQ(t.rows[c].effects[0] < 0, b > 0) << c;
    EXPECT_EQ(t.rows[c].effects[2] > 0, b > 0) << c;
    EXPECT_EQ(std::signbit(t.rows[c].effects[0]), std::signbit(kPrintedEffects[c][0])) << c;
  }
}
