// Seeded property checks for the entropy and rank laws.  Every trial draws
// from its own generator seeded by trial_seed(seed, i), so a failure can be
// replayed from the recorded seed alone.

#ifndef DUALENT_LAWS_HPP_
#define DUALENT_LAWS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "folner.hpp"
#include "peters.hpp"
#include "random.hpp"
#include "rank_search.hpp"
#include "spectral.hpp"

namespace dualent {

struct LawFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0; // per-trial seed
  std::string inputs;
  std::string detail;
  double deviation = 0;
};

struct LawReport {
  std::string law;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<LawFailure> failures;
  std::vector<LawFailure> inconclusive;
  double max_deviation = 0;
  double tolerance = 0;

  bool passed() const { return failures.empty(); }

  void record(double deviation) { max_deviation = std::max(max_deviation, deviation); }
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 step over (seed, trial)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace impl {

inline IntMatrix law_matrix(Rng& rng) {
  auto n = static_cast<std::size_t>(uniform_int(rng, 2, 4));
  return random_unimodular(rng, n, 8, 50);
}

} // namespace impl

// h(M^k) = |k| h(M).
inline LawReport check_power_law(std::size_t trials, std::uint64_t seed) {
  LawReport r{"power_law", seed, 0, {}, {}, 0, 1e-9};
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(seed, i);
    Rng rng(s);
    IntMatrix m = impl::law_matrix(rng);
    auto k = static_cast<long long>(uniform_int(rng, -3, 3));
    double base = eigen_entropy(m).value;
    double pow_h = eigen_entropy(power(m, k)).value;
    double dev = std::fabs(pow_h - static_cast<double>(std::llabs(k)) * base);
    r.record(dev);
    ++r.instances;
    if (dev > r.tolerance)
      r.failures.push_back({i, s, "M = " + m.str() + ", k = " + std::to_string(k),
                            "h(M^k) = " + std::to_string(pow_h) + ", |k| h(M) = " +
                                std::to_string(static_cast<double>(std::llabs(k)) * base),
                            dev});
  }
  return r;
}

// char_poly(S M S^-1) = char_poly(M) exactly.
inline LawReport check_conjugacy(std::size_t trials, std::uint64_t seed) {
  LawReport r{"conjugacy", seed, 0, {}, {}, 0, 0};
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(seed, i);
    Rng rng(s);
    IntMatrix m = impl::law_matrix(rng);
    IntMatrix c = random_unimodular(rng, m.rows(), 8, 50);
    IntMatrix conj = c * m * inverse_unimodular(c);
    IntPolynomial a = char_poly(m), b = char_poly(conj);
    ++r.instances;
    if (!(a == b)) {
      r.record(1);
      r.failures.push_back({i, s, "M = " + m.str() + ", S = " + c.str(), a.str() + " vs " + b.str(), 1});
      continue;
    }
    double dev = std::fabs(eigen_entropy(m).value - eigen_entropy(conj).value);
    r.record(dev);
    if (dev > r.tolerance)
      r.failures.push_back({i, s, "M = " + m.str() + ", S = " + c.str(), "entropies differ", dev});
  }
  return r;
}

// max(h1, h2) <= h(M1 + M2) <= h1 + h2, with equality on the right.
inline LawReport check_product_bounds(std::size_t trials, std::uint64_t seed) {
  LawReport r{"product_bounds", seed, 0, {}, {}, 0, 1e-9};
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(seed, i);
    Rng rng(s);
    IntMatrix a = impl::law_matrix(rng), b = impl::law_matrix(rng);
    double ha = eigen_entropy(a).value, hb = eigen_entropy(b).value;
    double hab = eigen_entropy(block_sum(a, b)).value;
    double dev = std::max({std::max(ha, hb) - hab, std::fabs(hab - (ha + hb)), 0.0});
    r.record(dev);
    ++r.instances;
    if (dev > r.tolerance)
      r.failures.push_back({i, s, "M1 = " + a.str() + ", M2 = " + b.str(),
                            "h1 = " + std::to_string(ha) + ", h2 = " + std::to_string(hb) +
                                ", h(M1 + M2) = " + std::to_string(hab),
                            dev});
  }
  return r;
}

struct RankLawInstance {
  std::string name;
  FgAbelianGroup big;
  FgAbelianGroup small;
  std::vector<AbelianElement> omega;     // in big
  std::vector<AbelianElement> omega_small;
  double delta = 0;
  std::int64_t radius = 2;
};

namespace impl {

inline std::string elements_str(const std::vector<AbelianElement>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].str();
  return s + "}";
}

// Checks rank(lesser) <= rank(greater); a violation where the exhaustion
// flags differ, or where a search ran out of room, is inconclusive.
inline void compare_ranks(LawReport& r, std::size_t i, const RankLawInstance& inst,
                          const std::vector<AbelianElement>& lesser_omega, const FgAbelianGroup& lesser_group,
                          const std::vector<AbelianElement>& greater_omega, const FgAbelianGroup& greater_group) {
  RankSearchOptions opt{.radius = inst.radius, .max_support = 8};
  std::string inputs = inst.name + ": omega = " + elements_str(inst.omega) + " in " + inst.big.str() +
                       ", delta = " + std::to_string(inst.delta) + ", R = " + std::to_string(inst.radius);
  ++r.instances;
  try {
    auto lo = min_rank_bruteforce(AbelianOps(lesser_group), lesser_omega, inst.delta, opt);
    auto hi = min_rank_bruteforce(AbelianOps(greater_group), greater_omega, inst.delta, opt);
    std::string detail = std::to_string(lo.rank) + " vs " + std::to_string(hi.rank);
    if (lo.rank <= hi.rank)
      return;
    double dev = static_cast<double>(lo.rank - hi.rank);
    if (lo.exhaustive_within_radius != hi.exhaustive_within_radius) {
      r.inconclusive.push_back({i, 0, inputs, detail + " (exhaustion flags differ)", dev});
      return;
    }
    r.record(dev);
    r.failures.push_back({i, 0, inputs, detail, dev});
  } catch (const SearchExhausted& e) {
    r.inconclusive.push_back({i, 0, inputs, e.what(), 0});
  }
}

inline AbelianElement el(const FgAbelianGroup& g, std::initializer_list<long long> lattice,
                         std::vector<std::int64_t> torsion = {}) {
  IntVector v;
  for (long long x : lattice)
    v.emplace_back(x);
  return make_element(g, v, std::move(torsion));
}

} // namespace impl

// Quotient maps: Z^2 -> Z (first coordinate) and Z + Z/2 -> Z.
inline std::vector<RankLawInstance> quotient_rank_instances() {
  using impl::el;
  std::vector<RankLawInstance> out;
  const FgAbelianGroup z(1), z2(2), zc(1, {2});
  auto proj2 = [&](const std::vector<AbelianElement>& w) {
    std::vector<AbelianElement> p;
    for (const auto& x : w)
      p.push_back(make_element(z, {x.lattice[0]}));
    return p;
  };
  std::vector<std::pair<std::string, std::vector<AbelianElement>>> sets2 = {
      {"identity", {el(z2, {0, 0})}},
      {"+-e1", {el(z2, {1, 0}), el(z2, {-1, 0})}},
      {"+-e2", {el(z2, {0, 1}), el(z2, {0, -1})}},
      {"e1+e2", {el(z2, {1, 1})}},
      {"e1,e2", {el(z2, {1, 0}), el(z2, {0, 1})}},
  };
  for (auto& [name, w] : sets2)
    for (double delta : {1.5, 0.5}) {
      if (name == "e1,e2" && delta < 1)
        continue; // rank beyond the support budget
      out.push_back({"Z^2 -> Z, " + name, z2, z, w, proj2(w), delta, 2});
    }
  std::vector<std::pair<std::string, std::vector<AbelianElement>>> setsc = {
      {"(1;0)", {el(zc, {1}, {0})}},
      {"(0;1)", {el(zc, {0}, {1})}},
      {"(1;1)", {el(zc, {1}, {1})}},
  };
  for (auto& [name, w] : setsc)
    for (double delta : {1.5, 0.5}) {
      std::vector<AbelianElement> p;
      for (const auto& x : w)
        p.push_back(make_element(z, {x.lattice[0]}));
      out.push_back({"Z + Z/2 -> Z, " + name, zc, z, w, p, delta, 3});
    }
  return out;
}

// ra(omega, delta) on G >= ra(pi(omega), delta) on the quotient.
inline LawReport check_quotient_rank(const std::vector<RankLawInstance>& instances = quotient_rank_instances()) {
  LawReport r{"quotient_rank", 0, 0, {}, {}, 0, 0};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    impl::compare_ranks(r, i, inst, inst.omega_small, inst.small, inst.omega, inst.big);
  }
  return r;
}

// H = Z x {0} inside Z^2.
inline std::vector<RankLawInstance> subgroup_rank_instances() {
  using impl::el;
  std::vector<RankLawInstance> out;
  const FgAbelianGroup z(1), z2(2);
  std::vector<std::pair<std::string, std::vector<long long>>> sets = {
      {"identity", {0}}, {"+-e1", {1, -1}}, {"2e1", {2}}, {"e1,2e1", {1, 2}}};
  for (auto& [name, shifts] : sets)
    for (double delta : {2.1, 1.0, 0.5}) {
      if (delta < 1 && (name == "2e1" || name == "e1,2e1"))
        continue; // rank beyond the radius
      std::vector<AbelianElement> big, small;
      for (long long s : shifts) {
        big.push_back(el(z2, {s, 0}));
        small.push_back(el(z, {s}));
      }
      out.push_back({"Z x 0 in Z^2, " + name, z2, z, big, small, delta, 2});
    }
  return out;
}

// ra computed inside H <= ra computed in G for omega in H.
inline LawReport check_subgroup_rank(const std::vector<RankLawInstance>& instances = subgroup_rank_instances()) {
  LawReport r{"subgroup_rank", 0, 0, {}, {}, 0, 0};
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    impl::compare_ranks(r, i, inst, inst.omega_small, inst.small, inst.omega, inst.big);
  }
  return r;
}

struct PetersCase {
  std::string name;
  IntMatrix matrix;
};

inline std::vector<PetersCase> peters_cases() {
  IntMatrix m{{1, 1}, {1, 2}};
  return {{"cat map", IntMatrix{{2, 1}, {1, 1}}},
          {"[[1,1],[1,2]]^2", m * m},
          {"3x3 hyperbolic", IntMatrix{{1, 1, 0}, {1, 0, 1}, {0, 1, 0}}},
          {"identity", IntMatrix::identity(2)},
          {"quarter turn", IntMatrix{{0, -1}, {1, 0}}}};
}

// Corners {0, 1}^p of the unit cube.
inline std::vector<AbelianElement> unit_cube_corners(const FgAbelianGroup& g) {
  std::vector<AbelianElement> out;
  const std::size_t p = g.rank();
  for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
    IntVector v;
    for (std::size_t i = 0; i < p; ++i)
      v.emplace_back((mask >> i) & 1);
    out.push_back(make_element(g, v));
  }
  return out;
}

struct PetersComparison {
  double spectral = 0;
  double tail = 0;
  double min_average = 0; // min over n of log(s_n) / n
  std::size_t terms = 0;
  bool capped = false;
  bool hyperbolic = false;
  double growth_degree = 0; // log(s_N / s_{N/2}) / log(2), for the non-hyperbolic case
};

inline PetersComparison compare_peters(const IntMatrix& m, std::size_t n = 12, std::size_t cap = default_sumset_cap) {
  PetersComparison c;
  FgAbelianGroup g(m.rows());
  AbelianAutomorphism gamma(g, m);
  GrowthSeries series = peters_growth(gamma, FiniteSubset(g, unit_cube_corners(g)), n, cap);
  GrowthRate rate = growth_rate_estimate(series);
  EntropyEstimate spec = eigen_entropy(m);
  c.spectral = spec.value;
  c.tail = rate.tail;
  c.terms = series.sizes.size();
  c.capped = series.capped;
  c.min_average = std::log(static_cast<double>(series.sizes[0]));
  for (std::size_t k = 1; k <= series.sizes.size(); ++k)
    c.min_average = std::min(c.min_average, std::log(static_cast<double>(series.sizes[k - 1])) / static_cast<double>(k));
  c.hyperbolic = std::none_of(spec.series.begin(), spec.series.end(),
                              [](double mod) { return std::fabs(mod - 1) <= 1e-9; });
  std::size_t last = series.sizes.size(), half = std::max<std::size_t>(1, last / 2);
  c.growth_degree = std::log(static_cast<double>(series.sizes[last - 1]) / static_cast<double>(series.sizes[half - 1])) /
                    std::log(static_cast<double>(last + 1) / static_cast<double>(half + 1));
  return c;
}

// Hyperbolic matrices: |tail - h| <= 0.15.  Others (h = 0): growth of s_n
// is polynomial of degree at most p.  Always: log(s_n)/n >= h - 1e-9.
inline LawReport check_peters_vs_spectral(const std::vector<PetersCase>& cases = peters_cases(), std::size_t n = 12) {
  LawReport r{"peters_vs_spectral", 0, 0, {}, {}, 0, 0.15};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& pc = cases[i];
    PetersComparison c = compare_peters(pc.matrix, n);
    ++r.instances;
    std::string inputs = pc.name + " " + pc.matrix.str() + ", E = unit cube corners, N = " + std::to_string(n);
    std::string detail = "spectral " + std::to_string(c.spectral) + ", tail " + std::to_string(c.tail) + " over " +
                         std::to_string(c.terms) + " terms" + (c.capped ? " (capped)" : "");
    std::vector<std::string> problems;
    double dev = 0;
    if (c.min_average < c.spectral - 1e-9) {
      problems.push_back("log(s_n)/n dips to " + std::to_string(c.min_average));
      dev = std::max(dev, c.spectral - c.min_average);
    }
    if (c.hyperbolic) {
      double gap = std::fabs(c.tail - c.spectral);
      r.record(gap);
      if (gap > r.tolerance) {
        problems.push_back("tail misses the spectral value by " + std::to_string(gap));
        dev = std::max(dev, gap);
      }
    } else {
      double degree = static_cast<double>(pc.matrix.rows());
      if (c.spectral > 1e-9 || c.growth_degree > degree + 0.5) {
        problems.push_back("polynomial degree " + std::to_string(c.growth_degree));
        dev = std::max({dev, c.spectral, c.growth_degree - degree});
      }
    }
    if (!problems.empty()) {
      for (const auto& p : problems)
        detail += "; " + p;
      r.failures.push_back({i, 0, inputs, detail, dev});
    }
  }
  return r;
}

// |1 - sum sqrt(T(g) T(h^-1 g))|^2 <= ||h.T - T||_1 on random T, h.
inline LawReport check_lemma31(std::size_t trials, std::uint64_t seed) {
  LawReport r{"overlap", seed, 0, {}, {}, 0, 1e-12};
  std::size_t i = 0;
  while (r.instances < trials) {
    std::uint64_t s = trial_seed(seed, i);
    Rng rng(s);
    const auto p = static_cast<std::size_t>(uniform_int(rng, 1, 2));
    FgAbelianGroup g(p);
    AbelianOps ops(g);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::vector<AbelianElement> pts;
    std::vector<double> w;
    double total = 0;
    for (const AbelianElement& x : ops.ball(3))
      if (uniform_int(rng, 0, 3) == 0) {
        pts.push_back(x);
        w.push_back(unit(rng));
        total += w.back();
      }
    IntVector hv;
    for (std::size_t k = 0; k < p; ++k)
      hv.emplace_back(uniform_int(rng, -3, 3));
    ++i;
    if (pts.empty())
      continue;
    for (double& x : w)
      x /= total;
    WeightedFunction t(ops, pts, w);
    OverlapCheck c = lemma31_check(t, make_element(g, hv));
    double dev = std::max(0.0, c.lhs - c.rhs);
    r.record(dev);
    ++r.instances;
    if (!c.holds)
      r.failures.push_back({i - 1, s, "T on " + std::to_string(pts.size()) + " points, h = " + vector_str(hv),
                            "lhs " + std::to_string(c.lhs) + " > rhs " + std::to_string(c.rhs), dev});
  }
  return r;
}

inline const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = {"power_law",     "conjugacy",          "product_bounds", "quotient_rank",
                                                 "subgroup_rank", "peters_vs_spectral", "overlap"};
  return names;
}

// suite is "all" or one of law_names().
inline std::vector<LawReport> run_laws(const std::string& suite, std::uint64_t seed, std::size_t trials = 100) {
  const auto& names = law_names();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw Error("unknown law suite '" + suite + "'");
  std::vector<LawReport> out;
  auto want = [&](const char* n) { return suite == "all" || suite == n; };
  if (want("power_law"))
    out.push_back(check_power_law(trials, seed));
  if (want("conjugacy"))
    out.push_back(check_conjugacy(trials, seed));
  if (want("product_bounds"))
    out.push_back(check_product_bounds(trials, seed));
  if (want("quotient_rank"))
    out.push_back(check_quotient_rank());
  if (want("subgroup_rank"))
    out.push_back(check_subgroup_rank());
  if (want("peters_vs_spectral"))
    out.push_back(check_peters_vs_spectral());
  if (want("overlap"))
    out.push_back(check_lemma31(std::max<std::size_t>(trials, 1000), seed));
  return out;
}

} // namespace dualent

#endif // DUALENT_LAWS_HPP_
