#include <gtest/gtest.h>

#include <dualent/peters.hpp>
#include <dualent/random.hpp>

#include <cmath>

using namespace dualent;

namespace {

const double golden_log = std::log((3 + std::sqrt(5.0)) / 2);

FiniteSubset lattice_set(const FgAbelianGroup& g, std::vector<std::vector<long long>> pts) {
  FiniteSubset s(g);
  for (const auto& p : pts) {
    IntVector v(p.begin(), p.end());
    s.insert(make_element(g, v));
  }
  return s;
}

FiniteSubset unit_square(const FgAbelianGroup& z2) { return lattice_set(z2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }

} // namespace

TEST(Sumset, Examples) {
  FgAbelianGroup z(1), z2(2);
  auto a = sumset(lattice_set(z, {{0}, {1}}), lattice_set(z, {{0}, {1}}));
  EXPECT_EQ(a, lattice_set(z, {{0}, {1}, {2}}));

  auto x = lattice_set(z2, {{3, 1}, {-2, 5}, {0, 0}});
  EXPECT_EQ(sumset(x, lattice_set(z2, {{0, 0}})), x);

  auto simplex = lattice_set(z2, {{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(sumset(simplex, simplex), lattice_set(z2, {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}}));
}

TEST(Sumset, TorsionReducesAndCapThrows) {
  FgAbelianGroup g(1, {2});
  FiniteSubset s(g);
  s.insert(make_element(g, {Int(0)}, {1}));
  auto d = sumset(s, s);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.element(0), make_element(g, {Int(0)}, {0}));

  FgAbelianGroup z(1);
  auto big = lattice_set(z, {{0}, {1}, {2}, {3}});
  auto far = lattice_set(z, {{0}, {10}, {20}});
  try {
    sumset(big, far, 5);
    FAIL() << "expected CapExceeded";
  } catch (const CapExceeded& c) {
    EXPECT_GT(c.size_lower_bound, 5u);
  }
  EXPECT_THROW(sumset(big, lattice_set(FgAbelianGroup(2), {{0, 0}})), ShapeError);
}

TEST(PetersGrowth, IdentityOnZ2Simplex) {
  FgAbelianGroup z2(2);
  auto series = peters_growth(AbelianAutomorphism::identity(z2), lattice_set(z2, {{0, 0}, {1, 0}, {0, 1}}), 8);
  ASSERT_EQ(series.sizes.size(), 8u);
  for (std::size_t n = 1; n <= 8; ++n)
    EXPECT_EQ(series.sizes[n - 1], (n + 1) * (n + 2) / 2);
  EXPECT_EQ(series.sizes[2], 10u);
  EXPECT_FALSE(series.zero_adjoined);
}

TEST(PetersGrowth, MinusIdentityOnZ) {
  FgAbelianGroup z(1);
  auto series = peters_growth(AbelianAutomorphism(z, IntMatrix{{-1}}), lattice_set(z, {{0}, {1}}), 12);
  for (std::size_t n = 1; n <= 12; ++n)
    EXPECT_EQ(series.sizes[n - 1], n + 1);
}

TEST(PetersGrowth, ZeroIsAdjoined) {
  FgAbelianGroup z(1);
  auto series = peters_growth(AbelianAutomorphism::identity(z), lattice_set(z, {{1}}), 4);
  EXPECT_TRUE(series.zero_adjoined);
  EXPECT_EQ(series.sizes, (std::vector<std::size_t>{2, 3, 4, 5}));
}

TEST(PetersGrowth, CatMapRateNearSpectral) {
  FgAbelianGroup z2(2);
  auto series = peters_growth(AbelianAutomorphism(z2, IntMatrix{{2, 1}, {1, 1}}), unit_square(z2), 12);
  ASSERT_FALSE(series.capped);
  GrowthRate r = growth_rate_estimate(series);
  EXPECT_NEAR(r.estimate.value, golden_log, 0.15);
  EXPECT_EQ(r.estimate.method, Method::peters);
  EXPECT_TRUE(series.submultiplicative());
  // Fekete: every log(s_n)/n bounds the limit from above.
  for (std::size_t n = 1; n <= series.sizes.size(); ++n)
    EXPECT_GE(std::log(static_cast<double>(series.sizes[n - 1])) / n, golden_log - 1e-9);
}

TEST(PetersGrowth, CapIsSoftStop) {
  FgAbelianGroup z2(2);
  auto series = peters_growth(AbelianAutomorphism(z2, IntMatrix{{2, 1}, {1, 1}}), unit_square(z2), 12, 1000);
  EXPECT_TRUE(series.capped);
  EXPECT_LT(series.sizes.size(), 12u);
  EXPECT_LE(series.sizes.back(), 1000u);
  EXPECT_GT(series.cap_lower_bound, 1000u);
}

TEST(PetersGrowth, TorsionParticipates) {
  // Z + Z/3 with x -> (x ; x mod 3): the torsion coordinate separates sums.
  FgAbelianGroup g(1, {3});
  AbelianAutomorphism gamma(g, IntMatrix{{1}}, {{1}}, {{1}});
  FiniteSubset e(g);
  e.insert(make_element(g, {Int(1)}, {0}));
  auto series = peters_growth(gamma, e, 6);
  // S_n = {(k ; k(k-1)/2 mod 3)-style partial sums}: sizes grow linearly.
  EXPECT_TRUE(series.submultiplicative());
  EXPECT_EQ(series.sizes.front(), 2u);
  for (std::size_t i = 1; i < series.sizes.size(); ++i)
    EXPECT_GE(series.sizes[i], series.sizes[i - 1]);
}

TEST(PetersGrowth, InvariantUnderChangeOfBasis) {
  Rng rng(17);
  FgAbelianGroup z2(2);
  IntMatrix m{{1, 1}, {1, 0}};
  auto base = peters_growth(AbelianAutomorphism(z2, m), unit_square(z2), 9);
  for (int trial = 0; trial < 5; ++trial) {
    IntMatrix p = random_unimodular(rng, 2, 4, 6);
    IntMatrix conj = p * m * inverse_unimodular(p);
    FiniteSubset moved(z2);
    for (const auto& x : unit_square(z2).elements())
      moved.insert(make_element(z2, p * x.lattice));
    auto series = peters_growth(AbelianAutomorphism(z2, conj), moved, 9);
    EXPECT_EQ(series.sizes, base.sizes) << p;
  }
}

TEST(GrowthRate, Examples) {
  GrowthSeries linear;
  for (std::size_t n = 1; n <= 12; ++n)
    linear.sizes.push_back(n + 1);
  GrowthRate r = growth_rate_estimate(linear);
  EXPECT_NEAR(r.tail, std::log(13.0 / 10.0) / 3, 1e-15);
  EXPECT_NEAR(r.estimate.value, 0.0875, 5e-5);
  EXPECT_NEAR(r.average, std::log(13.0) / 12, 1e-15);
  EXPECT_EQ(r.estimate.series.size(), 12u);

  GrowthSeries constant;
  constant.sizes.assign(5, 1);
  EXPECT_EQ(growth_rate_estimate(constant).estimate.value, 0.0);

  GrowthSeries short_series;
  short_series.sizes = {1, 2};
  EXPECT_THROW(growth_rate_estimate(short_series), Error);
}

TEST(GrowthRate, IdentityRateDecaysToZero) {
  FgAbelianGroup z2(2);
  auto id = AbelianAutomorphism::identity(z2);
  auto e = lattice_set(z2, {{0, 0}, {2, 1}, {-1, 3}, {1, 1}});
  double r12 = growth_rate_estimate(peters_growth(id, e, 12)).estimate.value;
  double r40 = growth_rate_estimate(peters_growth(id, e, 40)).estimate.value;
  EXPECT_LT(r40, r12);
  EXPECT_LT(r40, 0.1);
}
