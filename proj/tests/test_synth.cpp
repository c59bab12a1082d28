#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace ordsev;
using namespace ordsev::testing;

namespace {

const char* kTwoBinary = R"({
  "outcome": {"name": "Severity", "classes": ["Low", "Mid", "High"]},
  "variables": [
    {"name": "A", "categories": ["a0", "a1"], "base": "a0", "selected": ["a1"]},
    {"name": "B", "categories": ["b0", "b1"], "base": "b0", "selected": ["b1"]}
  ],
  "frequencies": {"A": [3, 1], "B": {"b0": 0.5, "b1": 0.5}},
  "beta": {"A: a1": 1.0, "B: b1": -0.5},
  "cutoffs": [-0.5, 1.5],
  "n": 1000,
  "seed": 7
})";

std::vector<double> class_shares(const Dataset& ds) {
  std::vector<double> s(ds.schema().num_classes(), 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) s[static_cast<std::size_t>(ds.severity(i))] += 1;
  for (double& v : s) v /= static_cast<double>(ds.size());
  return s;
}

}  // namespace

TEST(RecordStream, UniformOpenInterval) {
  double sum = 0.0;
  for (std::uint64_t r = 0; r < 20000; ++r) {
    RecordStream s(99, r);
    const double u = s.uniform_open();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000, 0.5, 0.01);
  RecordStream a(1, 5), b(1, 5), c(2, 5);
  EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(RecordStream(1, 5).next(), c.next());
}

TEST(GeneratorSpec, ParsesAndNormalizes) {
  const auto spec = parse_generator_spec(kTwoBinary);
  EXPECT_EQ(spec.sample_size, 1000u);
  EXPECT_EQ(spec.seed, 7u);
  EXPECT_DOUBLE_EQ(spec.category_probabilities[0][1], 0.25);
  EXPECT_DOUBLE_EQ(spec.params.beta[1], -0.5);
  const auto again = generator_spec_from_json(nlohmann::json::parse(to_json(spec).dump()));
  EXPECT_EQ(to_json(again).dump(), to_json(spec).dump());
}

TEST(GeneratorSpec, InvalidSpecsAreInputErrors) {
  auto j = nlohmann::json::parse(kTwoBinary);
  auto broken = [&](auto mutate) {
    auto c = j;
    mutate(c);
    return c;
  };
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["n"] = 0; })), InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["n"] = 2.5; })), InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c.erase("cutoffs"); })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["cutoffs"] = {1.0, -1.0}; })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["cutoffs"] = {1.0}; })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["frequencies"]["A"] = {1, -1}; })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["frequencies"]["A"] = {1}; })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["beta"] = {1.0}; })),
               InputError);
  EXPECT_THROW(generator_spec_from_json(broken([](auto& c) { c["beta"]["Z: z"] = 1.0; })),
               InputError);
  EXPECT_THROW(parse_generator_spec("{not json"), InputError);
}

TEST(Simulate, DeterministicAndSeedSensitive) {
  auto spec = table4_spec(3000, 42);
  std::ostringstream a, b, c;
  write_records(a, simulate(spec));
  write_records(b, simulate(spec));
  spec.seed = 43;
  write_records(c, simulate(spec));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str(), c.str());
}

TEST(Simulate, PrefixStableInSampleSize) {
  // Each record owns its stream, so a longer run extends a shorter one.
  const auto short_run = simulate(table4_spec(100, 42));
  const auto long_run = simulate(table4_spec(500, 42));
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(short_run.severity(i), long_run.severity(i));
    for (std::size_t v = 0; v < 8; ++v)
      EXPECT_EQ(short_run.category(i, v), long_run.category(i, v));
  }
}

TEST(Simulate, SingleRecord) {
  const auto ds = simulate(table4_spec(1, 42));
  EXPECT_EQ(ds.size(), 1u);
}

TEST(Simulate, InterceptOnlySharesMatchCutoffs) {
  auto spec = table4_spec(200000, 1);
  spec.params.beta.setZero();
  spec.params.cutoffs = Eigen::Vector2d(-1.6068752730583164, 4.5134923560754820);
  const auto s = class_shares(simulate(spec));
  EXPECT_NEAR(s[0], 6486.0 / 38833, 0.005);
  EXPECT_NEAR(s[1], 31926.0 / 38833, 0.005);
  EXPECT_NEAR(s[2], 421.0 / 38833, 0.005);
}

TEST(Simulate, CovariateSharesFollowFrequencies) {
  const auto spec = table4_spec(100000, 2);
  const auto ds = simulate(spec);
  for (std::size_t v = 0; v < spec.schema.variables.size(); ++v) {
    std::vector<double> n(spec.category_probabilities[v].size(), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) n[ds.category(i, v)] += 1;
    for (std::size_t c = 0; c < n.size(); ++c) {
      const double p = spec.category_probabilities[v][c];
      EXPECT_NEAR(n[c] / 1e5, p, 4.5 * std::sqrt(p * (1 - p) / 1e5) + 1e-9);
    }
  }
}

TEST(EnumerateProfiles, TwoBinaryVariables) {
  const auto spec = parse_generator_spec(kTwoBinary);
  const auto profiles = enumerate_profiles(spec);
  ASSERT_EQ(profiles.size(), 4u);
  double total = 0.0;
  for (const auto& p : profiles) {
    total += p.probability;
    EXPECT_NEAR(p.class_probabilities.sum(), 1.0, 1e-14);
  }
  EXPECT_NEAR(total, 1.0, 1e-15);
  EXPECT_EQ(profiles[1].categories, (std::vector<std::uint32_t>{0, 1}));
  EXPECT_DOUBLE_EQ(profiles[1].probability, 0.75 * 0.5);
  EXPECT_EQ(profiles[1].x, Eigen::Vector2d(0, 1));
}

TEST(EnumerateProfiles, LimitIsEnforced) {
  EXPECT_THROW(enumerate_profiles(table4_spec(), 1000), InputError);
}

TEST(EnumerateProfiles, SimulatedSharesConvergeToExactMixture) {
  const auto spec = table4_spec(100000, 42);
  const auto profiles = enumerate_profiles(spec);
  EXPECT_EQ(profiles.size(), 7u * 6 * 7 * 2 * 3 * 2 * 3 * 3);
  Eigen::Vector3d exact = Eigen::Vector3d::Zero();
  for (const auto& p : profiles) exact += p.probability * p.class_probabilities;
  EXPECT_NEAR(exact.sum(), 1.0, 1e-12);
  const auto s = class_shares(simulate(spec));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(s[static_cast<std::size_t>(j)], exact[j], 4.0 / std::sqrt(1e5));
}

TEST(EnumerateProfiles, WeightedEffectsMatchConditionalSum) {
  // Population effect of a dummy, computed two ways: weighted over every
  // profile, and over profiles where its variable sits at the reference
  // with the other variables' joint probability.
  const auto spec = table4_spec();
  const auto profiles = enumerate_profiles(spec);
  DesignMatrix d;
  d.num_classes = 3;
  d.columns = design_columns(spec.schema);
  d.x = RowMatrix(static_cast<Eigen::Index>(profiles.size()), 14);
  d.y.assign(profiles.size(), 0);
  std::vector<double> w;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    d.x.row(static_cast<Eigen::Index>(i)) = profiles[i].x.transpose();
    w.push_back(profiles[i].probability);
  }
  const auto effects = spec.category_effects();
  for (std::size_t c : {0u, 3u, 4u, 13u}) {
    const auto& col = d.columns[c];
    const auto base = spec.schema.variables[col.variable].base_index();
    const double p_base = spec.category_probabilities[col.variable][base];
    Eigen::Vector3d want = Eigen::Vector3d::Zero();
    for (const auto& p : profiles) {
      if (p.categories[col.variable] != base) continue;
      double index = 0.0;
      for (std::size_t v = 0; v < p.categories.size(); ++v) index += effects[v][p.categories[v]];
      want += (p.probability / p_base) *
              (class_probabilities_at(index + spec.params.beta[static_cast<Eigen::Index>(c)],
                                      spec.params.cutoffs) -
               class_probabilities_at(index, spec.params.cutoffs));
    }
    EXPECT_LT((average_marginal_effect(spec.params, d, c, w) - want).lpNorm<Eigen::Infinity>(),
              1e-10)
        << c;
  }
}
