#include <algorithm>
#include <gtest/gtest.h>

#include <cmath>

#include "balance/mc_test.hpp"
#include "oracles.hpp"

using namespace balance;

namespace {

McOptions opts(std::size_t n, std::uint64_t seed) {
  McOptions o;
  o.replicates = n;
  o.seed = {seed};
  return o;
}

// Exact left-tailed p-value P(U_null <= U_obs) by walking every sampler path.
template <class Sampler>
double exact_p(const SignedGraph& g, const Sampler& sampler) {
  const UnbalancedCount u(g);
  const auto r = u.count(g.signs());
  double p = 0.0;
  oracle::PathEnumerator src;
  do {
    if (u.count(sampler(g, src).signs()) <= r) p += src.weight();
  } while (src.next());
  return p;
}

}  // namespace

TEST(PValue, Modes) {
  const std::vector<double> s{1, 2, 2, 3, 5};
  EXPECT_DOUBLE_EQ(p_value(s, 2, PValueMode::raw_left), 3.0 / 5.0);
  EXPECT_DOUBLE_EQ(p_value(s, 2, PValueMode::add_one_left), 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(p_value(s, 2, PValueMode::raw_right), 4.0 / 5.0);
  EXPECT_DOUBLE_EQ(p_value(s, 2, PValueMode::two_sided), 1.0);
  EXPECT_DOUBLE_EQ(p_value(s, 1, PValueMode::two_sided), 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(p_value(s, 0, PValueMode::raw_left), 0.0);
}

TEST(McTest, TriangleFreeGraph) {
  const auto g = from_edge_list(4, {{0, 1, -1}, {1, 2, +1}, {2, 3, +1}});
  for (const auto& r : {old_test(g, opts(200, 1)), new_test(g, opts(200, 1))}) {
    EXPECT_EQ(r.observed, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.null_var, 0.0);
    ASSERT_TRUE(r.null_samples);
    for (double s : *r.null_samples) EXPECT_EQ(s, 0.0);
  }
}

TEST(McTest, SingleTriangleOneNegative) {
  const auto g = from_edge_list(3, {{0, 1, -1}, {1, 2, +1}, {0, 2, +1}});
  EXPECT_EQ(new_test(g, opts(500, 2)).p_value, 1.0);
  EXPECT_EQ(old_test(g, opts(500, 2)).p_value, 1.0);
  EXPECT_DOUBLE_EQ(exact_p(g, uniform_permutation(g)), 1.0);
}

TEST(McTest, AllPositiveAndSingleSignedStrata) {
  const auto k4 = from_edge_list(4, {{0, 1, +1}, {0, 2, +1}, {0, 3, +1}, {1, 2, +1}, {1, 3, +1}, {2, 3, +1}});
  EXPECT_EQ(old_test(k4, opts(100, 3)).p_value, 1.0);
  const auto g = from_edge_list(4, {{0, 1, +1}, {1, 2, +1}, {0, 2, +1}, {2, 3, -1}});
  EXPECT_EQ(new_test(g, opts(100, 3)).p_value, 1.0);
}

TEST(McTest, RawLeftIsExactFraction) {
  Rng rng(9);
  const auto g = oracle::random_mixed_graph(rng, 12);
  const auto r = new_test(g, opts(777, 4));
  ASSERT_TRUE(r.null_samples);
  std::size_t at_most = 0;
  for (double s : *r.null_samples) at_most += s <= r.observed;
  EXPECT_EQ(r.p_value, static_cast<double>(at_most) / 777.0);
  EXPECT_GE(r.null_var, 0.0);
}

TEST(McTest, ToyGraphOldRejectsNewDoesNot) {
  const auto g = oracle::toy_graph();
  EXPECT_EQ(census(g).u, 3u);
  const double p_old = exact_p(g, uniform_permutation(g));
  const double p_new = exact_p(g, stratified_permutation(embeddedness(g)));
  EXPECT_LT(p_old, 0.05);
  EXPECT_NEAR(p_new, 1.0, 1e-12);
  EXPECT_LE(old_test(g, opts(10000, 5)).p_value, 0.05);
  EXPECT_GT(new_test(g, opts(10000, 5)).p_value, 0.05);
}

TEST(McTest, MonteCarloWithinThreeSigmaOfExact) {
  Rng rng(100);
  for (int k = 0; k < 8; ++k) {
    const auto g = oracle::random_mixed_graph(rng, 12);
    const double exact = std::clamp(exact_p(g, stratified_permutation(embeddedness(g))), 0.0, 1.0);
    const std::size_t n = 20000;
    const double mc = new_test(g, opts(n, 10 + k)).p_value;
    EXPECT_LE(std::abs(mc - exact), 3.0 * std::sqrt(exact * (1 - exact) / n) + 1e-12) << "graph " << k;
  }
}

TEST(McTest, SingleStratumOldAndNewAgree) {
  std::vector<SignedEdgeRecord> r;
  for (Vertex a = 0; a < 5; ++a)
    for (Vertex b = a + 1; b < 5; ++b) r.push_back({a, b, (a + b) % 3 == 0 ? -1 : +1});
  const auto g = from_edge_list(5, r);
  ASSERT_EQ(embeddedness(g).strata.size(), 1u);
  const auto a = old_test(g, opts(1000, 6));
  const auto b = new_test(g, opts(1000, 6));
  EXPECT_EQ(a.p_value, b.p_value);
  EXPECT_EQ(*a.null_samples, *b.null_samples);
  EXPECT_DOUBLE_EQ(exact_p(g, uniform_permutation(g)), exact_p(g, stratified_permutation(embeddedness(g))));
}

TEST(McTest, DeterministicAcrossRunsAndWorkers) {
  Rng rng(55);
  const auto g = oracle::random_mixed_graph(rng, 12);
  auto o1 = opts(3000, 42);
  auto o4 = o1;
  o4.workers = 4;
  const auto a = new_test(g, o1);
  const auto b = new_test(g, o1);
  const auto c = new_test(g, o4);
  EXPECT_EQ(*a.null_samples, *b.null_samples);
  EXPECT_EQ(*a.null_samples, *c.null_samples);
  EXPECT_EQ(a.p_value, c.p_value);
  EXPECT_EQ(a.null_var, c.null_var);
}

TEST(McTest, RetentionPolicy) {
  const auto g = oracle::toy_graph();
  EXPECT_TRUE(new_test(g, opts(10, 1)).null_samples);
  auto o = opts(10, 1);
  o.retain_samples = false;
  EXPECT_FALSE(new_test(g, o).null_samples);
  EXPECT_FALSE(new_test(g, opts(kRetainSamplesLimit + 1, 1)).null_samples);
  EXPECT_THROW(new_test(g, opts(0, 1)), std::invalid_argument);
}

TEST(StructuralTest, UndefinedWithoutBothSigns) {
  const auto pos = from_edge_list(3, {{0, 1, +1}, {1, 2, +1}, {0, 2, +1}});
  const auto neg = from_edge_list(3, {{0, 1, -1}, {1, 2, -1}, {0, 2, -1}});
  EXPECT_THROW(structural_test(pos, opts(10, 1)), StatisticUndefined);
  EXPECT_THROW(structural_test(neg, opts(10, 1)), StatisticUndefined);
}

TEST(StructuralTest, PendantNegativeStatistic) {
  const auto g = from_edge_list(4, {{0, 1, +1}, {1, 2, +1}, {0, 2, +1}, {2, 3, -1}});
  const auto r = structural_test(g, opts(500, 2));
  EXPECT_DOUBLE_EQ(r.observed, -1.0);
  EXPECT_EQ(r.p_value_mode, PValueMode::two_sided);
}

TEST(StructuralTest, AllZeroEmbeddednessDegenerate) {
  const auto g = from_edge_list(5, {{0, 1, +1}, {1, 2, -1}, {2, 3, +1}, {3, 4, -1}});
  const auto r = structural_test(g, opts(200, 3));
  EXPECT_EQ(r.observed, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(StructuralTest, SymmetricGraphNearOne) {
  // Two disjoint triangles, one all negative, one all positive: identical eps multisets.
  const auto g = from_edge_list(6, {{0, 1, -1}, {1, 2, -1}, {0, 2, -1}, {3, 4, +1}, {4, 5, +1}, {3, 5, +1}});
  const auto r = structural_test(g, opts(2000, 4));
  EXPECT_EQ(r.observed, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(CriticalValue, Empirical) {
  const std::vector<double> flat(50, 7.0);
  EXPECT_EQ(critical_value(flat, 0.05), 7.0);
  EXPECT_EQ(critical_value(flat, 0.9), 7.0);
  std::vector<double> s;
  for (int i = 1; i <= 100; ++i) s.push_back(i);
  EXPECT_EQ(critical_value(s, 0.05), 5.0);
  EXPECT_EQ(critical_value(s, 0.5), 50.0);
  EXPECT_THROW(critical_value(std::vector<double>{}, 0.05), std::invalid_argument);
  EXPECT_THROW(critical_value(s, 0.0), std::invalid_argument);
  EXPECT_THROW(critical_value(s, 1.0), std::invalid_argument);
}

TEST(CriticalValue, NormalSampleMedian) {
  Rng rng(3);
  std::vector<double> z;
  for (int i = 0; i < 20001; ++i) {
    // Box-Muller on the library's uniforms
    const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
    z.push_back(std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2));
  }
  EXPECT_NEAR(critical_value(z, 0.5), 0.0, 0.03);
}
