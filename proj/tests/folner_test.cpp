#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dualent/folner.hpp"
#include "dualent/random.hpp"
#include "dualent/rank_search.hpp"
#include "dualent/simplex.hpp"

using namespace dualent;

namespace {

const FgAbelianGroup Z(1);
const FgAbelianGroup Z2(2);

AbelianElement z(long long v) { return make_element(Z, {Int(v)}); }
AbelianElement z2(long long a, long long b) { return make_element(Z2, {Int(a), Int(b)}); }

WeightedFunction uniform_on(const FgAbelianGroup& g, std::vector<AbelianElement> pts) {
  return WeightedFunction::uniform(AbelianOps(g), std::move(pts));
}

// Translation defect by brute force over a window, independent of the
// library's sparse evaluation.
Rational window_defect(const WeightedFunction& t, long long s, long long lo, long long hi) {
  Rational sum = 0;
  for (long long g = lo; g <= hi; ++g) {
    Rational d = t.exact_weight_at(z(g - s)) - t.exact_weight_at(z(g));
    sum += d < 0 ? Rational(-d) : d;
  }
  return sum;
}

} // namespace

// ---- simplex ----

TEST(Simplex, TwoVariableOptimum) {
  LinearProgram<Rational> lp(2);
  lp.objective = {Rational(-1), Rational(-1)};
  lp.add_row({{0, Rational(1)}, {1, Rational(2)}}, Sense::le, Rational(4));
  lp.add_row({{0, Rational(3)}, {1, Rational(1)}}, Sense::le, Rational(6));
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(-14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
}

TEST(Simplex, InfeasibleAndUnbounded) {
  LinearProgram<Rational> bad(1);
  bad.add_row({{0, Rational(1)}}, Sense::ge, Rational(2));
  bad.add_row({{0, Rational(1)}}, Sense::le, Rational(1));
  EXPECT_EQ(solve_lp(bad).status, LpStatus::infeasible);

  LinearProgram<double> open(2);
  open.objective = {-1.0, 0.0};
  open.add_row({{0, 1.0}, {1, -1.0}}, Sense::le, 1.0);
  EXPECT_EQ(solve_lp(open).status, LpStatus::unbounded);
}

TEST(Simplex, RedundantEqualitiesAndNegativeRhs) {
  LinearProgram<Rational> lp(2);
  lp.objective = {Rational(1), Rational(0)};
  lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, Sense::eq, Rational(1));
  lp.add_row({{0, Rational(2)}, {1, Rational(2)}}, Sense::eq, Rational(2));
  lp.add_row({{0, Rational(-1)}}, Sense::le, Rational(-1, 3));
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(1, 3));
  EXPECT_EQ(r.x[1], Rational(2, 3));
}

TEST(Simplex, BealeCyclingExampleTerminates) {
  // Cycles under the textbook largest-coefficient rule.
  LinearProgram<Rational> lp(4);
  lp.objective = {Rational(-3, 4), Rational(150), Rational(-1, 50), Rational(6)};
  lp.add_row({{0, Rational(1, 4)}, {1, Rational(-60)}, {2, Rational(-1, 25)}, {3, Rational(9)}}, Sense::le, Rational(0));
  lp.add_row({{0, Rational(1, 2)}, {1, Rational(-90)}, {2, Rational(-1, 50)}, {3, Rational(3)}}, Sense::le, Rational(0));
  lp.add_row({{2, Rational(1)}}, Sense::le, Rational(1));
  auto r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.objective, Rational(-1, 20));
}

TEST(Simplex, RandomTwoVariableAgainstVertexEnumeration) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + static_cast<int>(uniform_int(rng, 0, 3));
    LinearProgram<Rational> lp(2);
    LinearProgram<double> lpd(2);
    lp.objective = {Rational(uniform_int(rng, -5, 5)), Rational(uniform_int(rng, -5, 5))};
    lpd.objective = {lp.objective[0].convert_to<double>(), lp.objective[1].convert_to<double>()};
    // Box keeps everything bounded; rows are random <= cuts.
    std::vector<std::array<Rational, 3>> rows = {{1, 0, 10}, {0, 1, 10}};
    for (int i = 0; i < m; ++i)
      rows.push_back({Rational(uniform_int(rng, -4, 4)), Rational(uniform_int(rng, -4, 4)),
                      Rational(uniform_int(rng, -3, 12))});
    for (auto& r : rows) {
      lp.add_row({{0, r[0]}, {1, r[1]}}, Sense::le, r[2]);
      lpd.add_row({{0, r[0].convert_to<double>()}, {1, r[1].convert_to<double>()}}, Sense::le,
                  r[2].convert_to<double>());
    }
    // Oracle: best feasible vertex among pairwise intersections of the
    // constraint lines, including x = 0 and y = 0.
    auto all = rows;
    all.push_back({-1, 0, 0});
    all.push_back({0, -1, 0});
    std::optional<Rational> best;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        Rational det = all[i][0] * all[j][1] - all[i][1] * all[j][0];
        if (det == 0)
          continue;
        Rational x = (all[i][2] * all[j][1] - all[i][1] * all[j][2]) / det;
        Rational y = (all[i][0] * all[j][2] - all[i][2] * all[j][0]) / det;
        bool ok = true;
        for (auto& r : all)
          ok = ok && r[0] * x + r[1] * y <= r[2];
        if (!ok)
          continue;
        Rational v = lp.objective[0] * x + lp.objective[1] * y;
        if (!best || v < *best)
          best = v;
      }
    auto r = solve_lp(lp);
    auto rd = solve_lp(lpd);
    if (!best) {
      EXPECT_EQ(r.status, LpStatus::infeasible);
      continue;
    }
    ASSERT_EQ(r.status, LpStatus::optimal) << "trial " << trial;
    EXPECT_EQ(r.objective, *best) << "trial " << trial;
    ASSERT_EQ(rd.status, LpStatus::optimal);
    EXPECT_NEAR(rd.objective, best->convert_to<double>(), 1e-9);
  }
}

// ---- defect ----

TEST(Defect, Examples) {
  WeightedFunction u5 = uniform_on(Z, {z(0), z(1), z(2), z(3), z(4)});
  EXPECT_EQ(exact_defect(u5, {z(1)}), Rational(2, 5));
  EXPECT_DOUBLE_EQ(defect(u5, {z(1)}), 0.4);
  WeightedFunction point = WeightedFunction::point_mass(AbelianOps(Z), z(0));
  EXPECT_EQ(defect(point, {z(0)}), 0.0);
  EXPECT_EQ(defect(point, {z(7)}), 2.0);
  EXPECT_EQ(defect(point, {z(-1), z(3)}), 2.0);
  EXPECT_THROW(defect(point, {}), Error);
}

TEST(Defect, IntervalIsTwoOverLength) {
  for (long long len = 1; len <= 25; ++len) {
    WeightedFunction t = interval_folner(len);
    Rational expect(2, len);
    EXPECT_EQ(exact_defect(t, {z(1), z(-1)}), expect);
    EXPECT_EQ(window_defect(t, 1, -2, len + 2), expect);
  }
}

TEST(Defect, MatchesWindowOracleOnRandomFunctions) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<AbelianElement> pts;
    std::vector<Rational> w;
    Rational total = 0;
    for (long long g = -6; g <= 6; ++g)
      if (uniform_int(rng, 0, 2) == 0) {
        pts.push_back(z(g));
        w.push_back(Rational(uniform_int(rng, 1, 9)));
        total += w.back();
      }
    if (pts.empty())
      continue;
    for (auto& x : w)
      x /= total;
    WeightedFunction t(AbelianOps(Z), pts, w);
    long long s = uniform_int(rng, -8, 8);
    EXPECT_EQ(exact_translation_defect(t, z(s)), window_defect(t, s, -20, 20));
  }
}

TEST(Defect, RightTranslationInvariant) {
  Rng rng(6);
  AbelianOps ops(Z2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<AbelianElement> pts, moved;
    std::vector<Rational> w;
    Rational total = 0;
    AbelianElement r = z2(uniform_int(rng, -9, 9), uniform_int(rng, -9, 9));
    for (long long a = -2; a <= 2; ++a)
      for (long long b = -2; b <= 2; ++b)
        if (uniform_int(rng, 0, 3) == 0) {
          pts.push_back(z2(a, b));
          moved.push_back(add(Z2, z2(a, b), r));
          w.push_back(Rational(uniform_int(rng, 1, 5)));
          total += w.back();
        }
    if (pts.empty())
      continue;
    for (auto& x : w)
      x /= total;
    WeightedFunction t(ops, pts, w), tr(ops, moved, w);
    std::vector<AbelianElement> omega = {z2(1, 0), z2(0, 1), z2(1, -2)};
    EXPECT_EQ(exact_defect(t, omega), exact_defect(tr, omega));
  }
}

TEST(Weighted, Validation) {
  AbelianOps ops(Z);
  EXPECT_THROW(WeightedFunction(ops, {z(0), z(1)}, std::vector<Rational>{Rational(1, 2), Rational(1, 3)}),
               InvalidStructure);
  EXPECT_THROW(WeightedFunction(ops, {z(0), z(0)}, std::vector<Rational>{Rational(1, 2), Rational(1, 2)}),
               InvalidStructure);
  EXPECT_THROW(WeightedFunction(ops, {z(0), z(1)}, std::vector<Rational>{Rational(1), Rational(0)}),
               InvalidStructure);
  EXPECT_NO_THROW(WeightedFunction(ops, {z(0), z(1)}, std::vector<double>{0.3, 0.7 + 5e-13}));
  EXPECT_THROW(WeightedFunction(ops, {z(0), z(1)}, std::vector<double>{0.3, 0.7 + 1e-9}), InvalidStructure);
}

// ---- overlap inequality ----

TEST(Overlap, Examples) {
  WeightedFunction u5 = uniform_on(Z, {z(0), z(1), z(2), z(3), z(4)});
  auto c = lemma31_check(u5, z(1));
  EXPECT_NEAR(c.lhs, 0.04, 1e-15);
  EXPECT_NEAR(c.rhs, 0.4, 1e-15);
  EXPECT_TRUE(c.holds);
  auto zero = lemma31_check(u5, z(0));
  EXPECT_NEAR(zero.lhs, 0.0, 1e-15);
  EXPECT_EQ(zero.rhs, 0.0);
  EXPECT_TRUE(zero.holds);
  auto point = lemma31_check(WeightedFunction::point_mass(AbelianOps(Z), z(0)), z(3));
  EXPECT_EQ(point.lhs, 1.0);
  EXPECT_EQ(point.rhs, 2.0);
}

TEST(Overlap, HoldsOnRandomInstances) {
  Rng rng(31);
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  int checked = 0;
  while (checked < 1000) {
    std::vector<AbelianElement> pts;
    std::vector<double> w;
    double total = 0;
    for (long long a = -3; a <= 3; ++a)
      for (long long b = -3; b <= 3; ++b)
        if (uniform_int(rng, 0, 4) == 0) {
          pts.push_back(z2(a, b));
          w.push_back(unit(rng));
          total += w.back();
        }
    if (pts.empty())
      continue;
    for (double& x : w)
      x /= total;
    WeightedFunction t(AbelianOps(Z2), pts, w);
    auto c = lemma31_check(t, z2(uniform_int(rng, -3, 3), uniform_int(rng, -3, 3)));
    EXPECT_TRUE(c.holds) << c.lhs << " > " << c.rhs;
    ++checked;
  }
}

// ---- rank search ----

TEST(Rank, Examples) {
  AbelianOps ops(Z);
  auto trivial = min_rank_bruteforce(ops, {z(0)}, 0.3);
  EXPECT_EQ(trivial.rank, 1u);
  EXPECT_EQ(trivial.witness.size(), 1u);
  EXPECT_EQ(trivial.defect, 0.0);

  auto loose = min_rank_bruteforce(ops, {z(1)}, 2.1);
  EXPECT_EQ(loose.rank, 1u);
  EXPECT_EQ(loose.defect, 2.0);

  auto five = min_rank_bruteforce(ops, {z(1), z(-1)}, 0.5, {.radius = 8, .max_support = 8});
  EXPECT_EQ(five.rank, 5u);
  EXPECT_TRUE(five.exact);
  EXPECT_TRUE(five.exhaustive_within_radius);
  ASSERT_TRUE(five.exact_defect.has_value());
  EXPECT_EQ(*five.exact_defect, Rational(2, 5));
  EXPECT_LT(five.defect, 0.5);
  EXPECT_EQ(five.witness.size(), five.rank);
}

TEST(Rank, ExhaustionIsReported) {
  EXPECT_THROW(min_rank_bruteforce(AbelianOps(Z), {z(1)}, 0.5, {.radius = 1, .max_support = 3}), SearchExhausted);
  EXPECT_THROW(min_rank_bruteforce(AbelianOps(Z), {z(1)}, 0.0), Error);
}

// On Z with omega = {1}: sum_g |T(g-1) - T(g)| >= 2 max T >= 2/k, with
// equality for the uniform interval, so the rank is the least k with 2/k < delta.
TEST(Rank, OneDimensionalIsoperimetricOracle) {
  for (double delta : {2.5, 1.5, 0.9, 0.6, 0.45, 0.38, 0.3}) {
    std::size_t expect = static_cast<std::size_t>(std::floor(2 / delta)) + 1;
    if (2.0 / static_cast<double>(expect - 1) < delta)
      --expect;
    for (LpMode mode : {LpMode::exact, LpMode::floating}) {
      auto cert = min_rank_bruteforce(AbelianOps(Z), {z(1)}, delta, {.radius = 8, .max_support = 8, .mode = mode});
      EXPECT_EQ(cert.rank, expect) << "delta " << delta;
      EXPECT_LT(defect(cert.witness, {z(1)}), delta);
    }
  }
}

TEST(Rank, StrictInequalityAtTheBoundary) {
  // 2/4 = 0.5 exactly: four points are not enough for delta = 0.5.
  auto cert = min_rank_bruteforce(AbelianOps(Z), {z(1)}, 0.5, {.radius = 8, .mode = LpMode::exact});
  EXPECT_EQ(cert.rank, 5u);
  auto flt = min_rank_bruteforce(AbelianOps(Z), {z(1)}, 0.5, {.radius = 8, .mode = LpMode::floating});
  EXPECT_EQ(flt.rank, 5u);
}

TEST(Rank, SymmetryPruningAndThreadsDoNotChangeTheAnswer) {
  std::vector<AbelianElement> omega = {z2(1, 0), z2(0, 1)};
  for (double delta : {1.9, 1.5, 1.2}) {
    auto a = min_rank_bruteforce(AbelianOps(Z2), omega, delta, {.radius = 2, .max_support = 6});
    auto b = min_rank_bruteforce(AbelianOps(Z2), omega, delta,
                                 {.radius = 2, .max_support = 6, .symmetry_pruning = false});
    auto c = min_rank_bruteforce(AbelianOps(Z2), omega, delta, {.radius = 2, .max_support = 6, .threads = 3});
    EXPECT_EQ(a.rank, b.rank);
    EXPECT_EQ(a.rank, c.rank);
    EXPECT_EQ(a.witness.support(), c.witness.support());
    EXPECT_LE(a.supports_tested, b.supports_tested);
  }
}

TEST(Rank, MonotoneInDeltaAndOmega) {
  std::vector<AbelianElement> small = {z2(1, 0)};
  std::vector<AbelianElement> big = {z2(1, 0), z2(0, 1)};
  std::size_t previous = 0;
  for (double delta : {1.9, 1.5, 1.3, 1.05}) {
    auto a = min_rank_bruteforce(AbelianOps(Z2), small, delta, {.radius = 2, .max_support = 6});
    auto b = min_rank_bruteforce(AbelianOps(Z2), big, delta, {.radius = 2, .max_support = 6});
    EXPECT_LE(a.rank, b.rank) << delta;
    EXPECT_GE(b.rank, previous) << delta;
    previous = b.rank;
  }
}

namespace {

// Z^2 seen through a unimodular change of coordinates u: balls are images
// of the standard sup-norm balls.
struct TransformedOps : AbelianOps {
  IntMatrix u, u_inv;
  TransformedOps() : AbelianOps(Z2) {}
  TransformedOps(IntMatrix m) : AbelianOps(Z2), u(m), u_inv(inverse_unimodular(m)) {}
  bool in_ball(const AbelianElement& x, std::int64_t r) const {
    return AbelianOps::in_ball(make_element(Z2, u_inv * x.lattice), r);
  }
  std::vector<AbelianElement> ball(std::int64_t r) const {
    std::vector<AbelianElement> out;
    for (const auto& x : AbelianOps::ball(r))
      out.push_back(make_element(Z2, u * x.lattice));
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<ElementMap<AbelianElement>> symmetries() const { return {}; }
};

} // namespace

TEST(Rank, IsomorphismInvariance) {
  Rng rng(77);
  std::vector<AbelianElement> omega = {z2(1, 0), z2(1, 1)};
  for (int trial = 0; trial < 3; ++trial) {
    IntMatrix u = random_unimodular(rng, 2, 3, 4);
    TransformedOps t(u);
    std::vector<AbelianElement> image;
    for (const auto& s : omega)
      image.push_back(make_element(Z2, u * s.lattice));
    for (double delta : {1.5, 1.1}) {
      RankSearchOptions opt{.radius = 2, .max_support = 6, .symmetry_pruning = false};
      auto plain = min_rank_bruteforce(AbelianOps(Z2), omega, delta, opt);
      auto moved = min_rank_bruteforce(t, image, delta, opt);
      EXPECT_EQ(plain.rank, moved.rank) << u.str() << " delta " << delta;
    }
  }
}

TEST(Rank, FiniteGroupTorsionHandled) {
  // Z/3: the uniform function on the whole group has zero defect.
  FgAbelianGroup c3(0, {3});
  AbelianOps ops(c3);
  auto gen = make_element(c3, {}, {1});
  auto cert = min_rank_bruteforce(ops, {gen}, 0.1);
  EXPECT_EQ(cert.rank, 3u);
  EXPECT_EQ(cert.defect, 0.0);
}

// ---- parallelepipeds ----

TEST(Folner, ChooseConstant) {
  EXPECT_EQ(choose_folner_constant(1, 1.0), 6);
  EXPECT_EQ(choose_folner_constant(2, 0.5), 22);
  EXPECT_EQ(choose_folner_constant(3, 2.0), 4);
  EXPECT_EQ(choose_folner_constant(1, 5.0), 4);
  for (std::size_t p = 1; p <= 3; ++p)
    for (double d : {0.1, 0.3, 1.0}) {
      auto c = choose_folner_constant(p, d);
      auto ok = [&](std::int64_t v) { return std::pow((v - 2.0) / (v + 1.0), p) > 1 - d / 2; };
      EXPECT_TRUE(ok(c));
      if (c > 4) {
        EXPECT_FALSE(ok(c - 1));
      }
    }
}

TEST(Folner, ParallelepipedExamples) {
  auto t1 = parallelepiped_folner(Parallelepiped({{1.0}}), 4);
  EXPECT_EQ(t1.size(), 9u);
  EXPECT_EQ(t1.support().front(), z(-4));
  auto t2 = parallelepiped_folner(Parallelepiped({{1.0, 0.0}, {0.0, 1.0}}), 2);
  EXPECT_EQ(t2.size(), 25u);
  auto t3 = parallelepiped_folner(Parallelepiped({{1.0}}), choose_folner_constant(1, 1.0));
  EXPECT_EQ(t3.size(), 13u);
  EXPECT_EQ(exact_defect(t3, {z(1), z(-1)}), Rational(2, 13));
  EXPECT_THROW(Parallelepiped({{1.0, 2.0}, {2.0, 4.0}}), InvalidStructure);
}

TEST(Folner, SymmetricDifferenceBoundExhaustive) {
  std::vector<Parallelepiped> bases = {
      Parallelepiped({{1.0}}),
      Parallelepiped({{2.5}}),
      Parallelepiped({{1.0, 0.0}, {0.0, 1.0}}),
      Parallelepiped({{1.0, 1.0}, {-1.0, 1.0}}),
      Parallelepiped({{2.0, 0.5}, {0.0, 1.5}}),
      Parallelepiped({{3.236, 2.0}, {-1.236, 2.0}}),
  };
  for (const auto& chi : bases) {
    ASSERT_TRUE(chi.contains_unit_cube());
    for (double delta : {1.0, 0.5, 0.3}) {
      auto r = check_parallelepiped_folner(chi, delta);
      EXPECT_TRUE(r.holds) << "worst " << r.worst_ratio << " delta " << delta;
      EXPECT_GT(r.shifts, 0u);
    }
  }
  EXPECT_FALSE(Parallelepiped({{0.5, 0.0}, {0.0, 1.0}}).contains_unit_cube());
  EXPECT_THROW(check_parallelepiped_folner(Parallelepiped({{0.5}}), 1.0), InvalidStructure);
}

TEST(Folner, SymmetricDifferenceMatchesDefect) {
  // For a uniform function the symmetric-difference ratio is the defect.
  Parallelepiped chi({{1.0, 1.0}, {-1.0, 1.0}});
  auto pts = chi.scaled(5).lattice_points();
  std::vector<AbelianElement> elems;
  for (auto& p : pts)
    elems.push_back(make_element(Z2, p));
  auto t = uniform_on(Z2, elems);
  for (auto s : {z2(1, 0), z2(1, 1), z2(-2, 1)})
    EXPECT_EQ(exact_translation_defect(t, s), symmetric_difference_ratio(pts, s.lattice));
}

// ---- adapted basis ----

TEST(AdaptedBasis, Examples) {
  auto diag = adapted_basis(IntMatrix{{2, 0}, {0, 1}}, 0.1);
  EXPECT_TRUE(diag.validated);
  EXPECT_NEAR(std::fabs(diag.chi.basis()[0][0]), 1.0, 1e-12);
  EXPECT_NEAR(diag.chi.basis()[0][1], 0.0, 1e-12);
  EXPECT_NEAR(std::fabs(diag.chi.basis()[1][1]), 1.0, 1e-12);
  EXPECT_NEAR(diag.mu[0], 2.0, 1e-12);
  EXPECT_NEAR(diag.mu[1], 1.0, 1e-12);

  auto cat = adapted_basis(IntMatrix{{2, 1}, {1, 1}}, 0.1);
  EXPECT_TRUE(cat.validated) << cat.worst_ratio;
  const double phi = (1 + std::sqrt(5.0)) / 2;
  // First vector along the expanding eigendirection (phi, 1).
  EXPECT_NEAR(cat.chi.basis()[0][0] / cat.chi.basis()[0][1], phi, 1e-9);
  EXPECT_NEAR(cat.mu[0], phi * phi, 1e-9);

  auto rot = adapted_basis(IntMatrix{{0, -1}, {1, 0}}, 0.1);
  EXPECT_TRUE(rot.validated) << rot.worst_ratio;
  EXPECT_NEAR(rot.mu[0], 1.0, 1e-12);

  EXPECT_THROW(adapted_basis(IntMatrix{{1, 1}, {1, 1}}, 0.1), InvalidStructure);
  EXPECT_THROW(adapted_basis(IntMatrix{{1, 0}, {0, 1}}, 0.0), Error);
}

TEST(AdaptedBasis, RepeatedEigenvaluesAndHigherRank) {
  for (const IntMatrix& m : {IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{-1, 1}, {0, -1}},
                             IntMatrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 0}}, block_sum(IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{2, 1}, {1, 1}}),
                             IntMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}}) {
    auto b = adapted_basis(m, 0.1);
    EXPECT_TRUE(b.validated) << m.str() << " worst " << b.worst_ratio;
    EXPECT_TRUE(b.chi.contains_unit_cube());
  }
}

// ---- convolution tower ----

TEST(Tower, Examples) {
  AbelianAutomorphism id = AbelianAutomorphism::identity(Z);
  WeightedFunction f = uniform_on(Z, {z(0), z(1)});
  WeightedFunction one = convolution_tower(f, id, 1);
  EXPECT_EQ(one.support(), f.support());
  EXPECT_EQ(one.exact_weights(), f.exact_weights());

  WeightedFunction two = convolution_tower(f, id, 2, {z(1)});
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two.exact_weights(), (std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
  EXPECT_EQ(two.support().back(), z(2));
  EXPECT_THROW(convolution_tower(f, id, 0), Error);
  EXPECT_THROW(convolution_tower(uniform_on(Z, {z(0), z(1), z(5)}), id, 12, {}, 20), CapExceeded);
}

TEST(Tower, SupportIsIteratedSumsetAndMassIsOne) {
  FgAbelianGroup g(2, {2});
  AbelianAutomorphism cat(g, IntMatrix{{2, 1}, {1, 1}});
  WeightedFunction f = uniform_on(g, {make_element(g, {Int(0), Int(0)}, {0}), make_element(g, {Int(1), Int(0)}, {1}),
                                      make_element(g, {Int(0), Int(1)}, {0})});
  std::vector<AbelianElement> omega = {make_element(g, {Int(1), Int(0)}, {0}), make_element(g, {Int(0), Int(0)}, {1})};
  for (std::size_t n = 1; n <= 4; ++n) {
    WeightedFunction t = convolution_tower(f, cat, n, omega);
    Rational mass = 0;
    for (const auto& w : t.exact_weights())
      mass += w;
    EXPECT_EQ(mass, 1);
    // Oracle: the iterated sumset of the supports.
    FiniteSubset s(g, f.support()), layer(g, f.support());
    for (std::size_t j = 1; j < n; ++j) {
      layer = image(cat, layer);
      s = sumset(s, layer);
    }
    EXPECT_EQ(t.support(), s.elements());
  }
}

TEST(Tower, FloatingWeights) {
  AbelianAutomorphism neg(Z, IntMatrix{{-1}});
  WeightedFunction f(AbelianOps(Z), {z(0), z(1)}, std::vector<double>{0.25, 0.75});
  WeightedFunction t = convolution_tower(f, neg, 2, {z(1)});
  EXPECT_FALSE(t.is_exact());
  // (0.25 d0 + 0.75 d1) * (0.25 d0 + 0.75 d-1)
  EXPECT_NEAR(t.weight_at(z(-1)), 0.1875, 1e-15);
  EXPECT_NEAR(t.weight_at(z(0)), 0.625, 1e-15);
  EXPECT_NEAR(t.weight_at(z(1)), 0.1875, 1e-15);
}
