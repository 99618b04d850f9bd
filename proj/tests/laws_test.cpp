#include <gtest/gtest.h>

#include <dualent/laws.hpp>

#include <cmath>

using namespace dualent;

namespace {

std::string dump(const LawReport& r) {
  std::string s = r.law + ": " + std::to_string(r.failures.size()) + " failures";
  for (const auto& f : r.failures)
    s += "\n  " + f.inputs + " | " + f.detail;
  return s;
}

} // namespace

TEST(TrialSeed, DeterministicAndDistinct) {
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(7, 4));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(Laws, PowerLaw) {
  auto r = check_power_law(60, 12345);
  EXPECT_EQ(r.instances, 60u);
  EXPECT_TRUE(r.passed()) << dump(r);
  EXPECT_LE(r.max_deviation, 1e-9);
}

TEST(Laws, Conjugacy) {
  auto r = check_conjugacy(60, 99);
  EXPECT_TRUE(r.passed()) << dump(r);
}

TEST(Laws, ProductBounds) {
  auto r = check_product_bounds(60, 4242);
  EXPECT_TRUE(r.passed()) << dump(r);
}

TEST(Laws, ReportsAreReproducible) {
  auto a = check_power_law(10, 5), b = check_power_law(10, 5);
  EXPECT_EQ(a.max_deviation, b.max_deviation);
}

TEST(Laws, QuotientRank) {
  auto r = check_quotient_rank();
  EXPECT_GE(r.instances, 10u);
  EXPECT_TRUE(r.passed()) << dump(r);
  EXPECT_TRUE(r.inconclusive.empty());
}

TEST(Laws, SubgroupRank) {
  auto r = check_subgroup_rank();
  EXPECT_GE(r.instances, 8u);
  EXPECT_TRUE(r.passed()) << dump(r);
  EXPECT_TRUE(r.inconclusive.empty());
}

TEST(Laws, RankComparisonDetectsViolation) {
  // Swapping the roles (claiming the quotient is bigger) must be caught on
  // an instance where the ranks differ: omega = {+-e2} has rank 1 in Z.
  FgAbelianGroup z(1), z2(2);
  RankLawInstance inst{"swap", z2, z, {make_element(z2, {Int(0), Int(1)})}, {make_element(z, {Int(0)})}, 0.5, 2};
  LawReport r{"swap", 0, 0, {}, {}, 0, 0};
  impl::compare_ranks(r, 0, inst, inst.omega, inst.big, inst.omega_small, inst.small);
  EXPECT_FALSE(r.passed());
}

TEST(Laws, OverlapInequality) {
  auto r = check_lemma31(1000, 31);
  EXPECT_EQ(r.instances, 1000u);
  EXPECT_TRUE(r.passed()) << dump(r);
}

TEST(Peters, CornersOfCube) {
  FgAbelianGroup z3(3);
  EXPECT_EQ(unit_cube_corners(z3).size(), 8u);
}

TEST(Peters, ComparisonPerCase) {
  auto cases = peters_cases();
  auto r = check_peters_vs_spectral(cases);
  EXPECT_EQ(r.instances, cases.size());
  // The squared matrix grows like 4^n from the corners, below its entropy.
  ASSERT_EQ(r.failures.size(), 1u) << dump(r);
  EXPECT_EQ(r.failures[0].trial, 1u);
  PetersComparison sq = compare_peters(cases[1].matrix);
  EXPECT_NEAR(sq.spectral, 2 * std::log((3 + std::sqrt(5.0)) / 2), 1e-12);
  EXPECT_NEAR(sq.tail, std::log(4.0), 1e-12);
}

TEST(Peters, HyperbolicAndPolynomialCases) {
  PetersComparison cat = compare_peters(IntMatrix{{2, 1}, {1, 1}});
  EXPECT_TRUE(cat.hyperbolic);
  EXPECT_LE(std::fabs(cat.tail - cat.spectral), 0.15);
  PetersComparison id = compare_peters(IntMatrix::identity(2));
  EXPECT_FALSE(id.hyperbolic);
  EXPECT_EQ(id.spectral, 0);
  // s_n = (n + 1)^2
  EXPECT_NEAR(id.growth_degree, 2, 1e-12);
}

TEST(Suites, Selection) {
  EXPECT_EQ(run_laws("conjugacy", 1, 5).size(), 1u);
  EXPECT_THROW(run_laws("bogus", 1), Error);
}

TEST(LawExamples, PowerAndConjugacy) {
  IntMatrix cat{{2, 1}, {1, 1}};
  double h = eigen_entropy(cat).value;
  EXPECT_NEAR(eigen_entropy(power(cat, 2)).value, 1.9248473002, 1e-9);
  EXPECT_NEAR(eigen_entropy(power(cat, 0)).value, 0, 1e-12);
  EXPECT_NEAR(eigen_entropy(power(cat, -1)).value, h, 1e-12);
  IntMatrix s{{1, 1}, {0, 1}};
  IntPolynomial expected{{Int(1), Int(-3), Int(1)}};
  EXPECT_EQ(char_poly(s * cat * inverse_unimodular(s)), expected);
  EXPECT_EQ(char_poly(cat), expected);
}

TEST(LawExamples, ProductBlocks) {
  IntMatrix cat{{2, 1}, {1, 1}}, id = IntMatrix::identity(2);
  EXPECT_NEAR(eigen_entropy(block_sum(id, id)).value, 0, 1e-12);
  EXPECT_NEAR(eigen_entropy(block_sum(cat, id)).value, 0.9624236501, 1e-9);
  EXPECT_NEAR(eigen_entropy(block_sum(cat, cat)).value, 1.9248473002, 1e-9);
}

TEST(LawExamples, QuotientRanks) {
  FgAbelianGroup z(1), z2(2);
  RankSearchOptions opt{.radius = 2, .max_support = 8};
  auto e = [](const FgAbelianGroup& g, std::vector<long long> v) { return make_element(g, IntVector(v.begin(), v.end())); };
  auto big = min_rank_bruteforce(AbelianOps(z2), {e(z2, {1, 0}), e(z2, {-1, 0})}, 0.5, opt);
  auto small = min_rank_bruteforce(AbelianOps(z), {e(z, {1}), e(z, {-1})}, 0.5, opt);
  EXPECT_EQ(big.rank, 5u);
  EXPECT_EQ(small.rank, 5u);
  auto vertical = min_rank_bruteforce(AbelianOps(z2), {e(z2, {0, 1}), e(z2, {0, -1})}, 0.5, opt);
  auto projected = min_rank_bruteforce(AbelianOps(z), {e(z, {0})}, 0.5, opt);
  EXPECT_EQ(projected.rank, 1u);
  EXPECT_GE(vertical.rank, projected.rank);
  EXPECT_EQ(min_rank_bruteforce(AbelianOps(z2), {e(z2, {1, 0})}, 2.1, opt).rank, 1u);
}
