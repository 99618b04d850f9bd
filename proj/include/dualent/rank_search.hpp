// Amenable delta-rank by exhaustive minimum-support search.
//
// ra(omega, delta) is the least |supp T| over probability functions T with
// ||s.T - T||_1 < delta for every s in omega.  For amenable groups the
// trivial action attains the infimum over actions, so only scalar-valued T
// are searched.  Candidate supports S contain the identity (right
// translation preserves the defect) and lie in the ball of the given
// radius; for each S a linear program minimizes max_s ||s.T - T||_1.

#ifndef DUALENT_RANK_SEARCH_HPP_
#define DUALENT_RANK_SEARCH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "simplex.hpp"
#include "weighted.hpp"

namespace dualent {

enum class LpMode {
  automatic, // exact when |S| <= 12 and the ball has <= 40 points
  exact,
  floating,
};

struct RankSearchOptions {
  std::int64_t radius = 4;
  std::size_t max_support = 8;
  LpMode mode = LpMode::automatic;
  // Float optimum above delta + margin rejects a support without an exact solve.
  double screen_margin = 1e-6;
  // 0 = unlimited; otherwise levels are truncated and the result is flagged
  // non-exhaustive.
  std::size_t max_candidates_per_level = 0;
  bool symmetry_pruning = true;
  unsigned threads = 1;
};

template <GroupOps G>
struct RankCertificate {
  using element_type = typename G::element_type;
  std::size_t rank = 0;
  Weighted<G> witness;
  double defect = 0;                    // achieved max_s ||s.T - T||_1
  std::optional<Rational> exact_defect; // when decided in exact mode
  double delta = 0;
  std::vector<element_type> omega;
  std::int64_t radius = 0;
  bool exhaustive_within_radius = true;
  bool exact = false;
  std::size_t supports_tested = 0;
};

namespace impl {

// The defect LP for one support, with integer coefficients so it can be
// instantiated over double or Rational.
struct DefectLp {
  std::size_t support_size = 0;
  std::size_t variables = 0; // T_0..T_{k-1}, t, u...
  struct Row {
    std::map<std::size_t, int> terms;
    Sense sense;
    int rhs;
  };
  std::vector<Row> rows;

  template <class T>
  LinearProgram<T> instantiate() const {
    LinearProgram<T> lp(variables);
    lp.objective[support_size] = T(1);
    for (const Row& r : rows) {
      std::vector<std::pair<std::size_t, T>> terms;
      for (const auto& [j, c] : r.terms)
        if (c != 0)
          terms.emplace_back(j, T(c));
      lp.add_row(std::move(terms), r.sense, T(r.rhs));
    }
    return lp;
  }
};

template <GroupOps G>
DefectLp build_defect_lp(const G& ops, const std::vector<typename G::element_type>& support,
                         const std::vector<typename G::element_type>& omega) {
  const std::size_t k = support.size();
  auto index_of = [&](const typename G::element_type& x) -> std::optional<std::size_t> {
    auto it = std::lower_bound(support.begin(), support.end(), x);
    if (it == support.end() || x < *it)
      return std::nullopt;
    return static_cast<std::size_t>(it - support.begin());
  };
  DefectLp lp;
  lp.support_size = k;
  lp.variables = k + 1;
  const std::size_t t_var = k;
  DefectLp::Row total{{}, Sense::eq, 1};
  for (std::size_t i = 0; i < k; ++i)
    total.terms[i] = 1;
  lp.rows.push_back(total);
  for (const auto& s : omega) {
    auto s_inv = ops.inverse(s);
    DefectLp::Row bound{{{t_var, -1}}, Sense::le, 0};
    for (std::size_t i = 0; i < k; ++i) {
      if (auto j = index_of(ops.op(s_inv, support[i]))) {
        // u >= |T_j - T_i|
        std::size_t u = lp.variables++;
        bound.terms[u] += 1;
        lp.rows.push_back({{{u, 1}, {*j, -1}, {i, 1}}, Sense::ge, 0});
        lp.rows.push_back({{{u, 1}, {*j, 1}, {i, -1}}, Sense::ge, 0});
      } else {
        bound.terms[i] += 1;
      }
      if (!index_of(ops.op(s, support[i])))
        bound.terms[i] += 1;
    }
    lp.rows.push_back(std::move(bound));
  }
  return lp;
}

template <class E>
bool lex_less(const std::vector<E>& a, const std::vector<E>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace impl

// Drop the identity and keep one of each {s, s^-1} pair: both give the same
// defect, since ||s^-1.T - T||_1 = ||T - s.T||_1.
template <GroupOps G>
std::vector<typename G::element_type> reduce_omega(const G& ops, std::vector<typename G::element_type> omega) {
  std::vector<typename G::element_type> out;
  std::sort(omega.begin(), omega.end());
  auto e = ops.identity();
  for (const auto& s : omega) {
    if (!(s < e) && !(e < s))
      continue;
    auto inv = ops.inverse(s);
    auto rep = inv < s ? inv : s;
    if (std::none_of(out.begin(), out.end(), [&](const auto& x) { return !(x < rep) && !(rep < x); }))
      out.push_back(rep);
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <GroupOps G>
RankCertificate<G> min_rank_bruteforce(const G& ops, const std::vector<typename G::element_type>& omega,
                                       double delta, const RankSearchOptions& opt = {}) {
  using E = typename G::element_type;
  if (!(delta > 0))
    throw Error("min_rank_bruteforce: delta must be positive");
  if (opt.radius < 0 || opt.max_support < 1)
    throw Error("min_rank_bruteforce: radius >= 0 and max_support >= 1 required");
  if (omega.empty())
    throw Error("min_rank_bruteforce: omega must be nonempty");

  RankCertificate<G> cert;
  cert.delta = delta;
  cert.omega = omega;
  cert.radius = opt.radius;
  const E e = ops.identity();
  const std::vector<E> reduced = reduce_omega(ops, omega);
  if (reduced.empty()) {
    cert.rank = 1;
    cert.witness = Weighted<G>::point_mass(ops, e);
    cert.defect = 0;
    cert.exact_defect = Rational(0);
    cert.exact = true;
    return cert;
  }

  const std::vector<E> ball = ops.ball(opt.radius);
  std::vector<E> others;
  for (const E& x : ball)
    if (x < e || e < x)
      others.push_back(x);

  // Symmetries that fix omega setwise.
  std::vector<ElementMap<E>> syms;
  if (opt.symmetry_pruning) {
    std::vector<E> sorted_omega = omega;
    std::sort(sorted_omega.begin(), sorted_omega.end());
    for (auto& f : ops.symmetries()) {
      std::vector<E> img;
      for (const E& s : omega)
        img.push_back(f(s));
      std::sort(img.begin(), img.end());
      auto eq = [](const E& a, const E& b) { return !(a < b) && !(b < a); };
      img.erase(std::unique(img.begin(), img.end(), eq), img.end());
      std::vector<E> so = sorted_omega;
      so.erase(std::unique(so.begin(), so.end(), eq), so.end());
      if (img.size() == so.size() && std::equal(img.begin(), img.end(), so.begin(), eq))
        syms.push_back(f);
    }
  }

  // True when some right translate (optionally composed with a symmetry)
  // of s stays in the ball and sorts lexicographically before s.
  auto dominated = [&](const std::vector<E>& s) {
    std::vector<E> img(s.size());
    for (const E& r : s) {
      E r_inv = ops.inverse(r);
      for (std::size_t f = 0; f <= syms.size(); ++f) {
        if (f == 0 && !(r < e || e < r))
          continue;
        bool inside = true;
        for (std::size_t i = 0; i < s.size() && inside; ++i) {
          E y = ops.op(s[i], r_inv);
          img[i] = f == 0 ? y : syms[f - 1](y);
          inside = ops.in_ball(img[i], opt.radius);
        }
        if (!inside)
          continue;
        std::sort(img.begin(), img.end());
        if (impl::lex_less(img, s))
          return true;
      }
    }
    return false;
  };

  const Rational delta_exact(delta); // exact binary value of delta
  const unsigned threads = worker_count(opt.threads);

  for (std::size_t k = 1; k <= opt.max_support && k - 1 <= others.size(); ++k) {
    const bool exact = opt.mode == LpMode::exact ||
                       (opt.mode == LpMode::automatic && k <= 12 && ball.size() <= 40);
    // Canonical candidates of this cardinality.
    std::vector<std::vector<E>> candidates;
    std::vector<std::size_t> pick(k - 1);
    for (std::size_t i = 0; i + 1 < k; ++i)
      pick[i] = i;
    bool truncated = false;
    for (;;) {
      std::vector<E> s{e};
      for (std::size_t i : pick)
        s.push_back(others[i]);
      std::sort(s.begin(), s.end());
      if (!dominated(s)) {
        if (opt.max_candidates_per_level && candidates.size() >= opt.max_candidates_per_level) {
          truncated = true;
          break;
        }
        candidates.push_back(std::move(s));
      }
      // Next combination.
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] == others.size() - (pick.size() - (i - 1)))
        --i;
      if (i == 0)
        break;
      ++pick[i - 1];
      for (std::size_t j = i; j < pick.size(); ++j)
        pick[j] = pick[j - 1] + 1;
    }
    if (truncated)
      cert.exhaustive_within_radius = false;
    std::sort(candidates.begin(), candidates.end(), impl::lex_less<E>);
    cert.supports_tested += candidates.size();

    auto feasible = [&](std::size_t idx) {
      impl::DefectLp lp = impl::build_defect_lp(ops, candidates[idx], reduced);
      LpResult<double> approx = solve_lp(lp.instantiate<double>());
      if (approx.status != LpStatus::optimal)
        throw InternalFault("defect LP not optimal");
      if (approx.objective > delta + opt.screen_margin)
        return false;
      if (!exact)
        return approx.objective <= delta - 1e-9;
      LpResult<Rational> sol = solve_lp(lp.instantiate<Rational>());
      if (sol.status != LpStatus::optimal)
        throw InternalFault("exact defect LP not optimal");
      return sol.objective < delta_exact;
    };
    std::size_t hit = first_success(candidates.size(), feasible, threads);
    if (hit == candidates.size())
      continue;

    // Re-solve the winner and build a strictly positive witness.
    const std::vector<E>& support = candidates[hit];
    impl::DefectLp lp = impl::build_defect_lp(ops, support, reduced);
    cert.rank = k;
    cert.exact = exact;
    if (exact) {
      LpResult<Rational> sol = solve_lp(lp.instantiate<Rational>());
      std::vector<Rational> w(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k));
      if (std::any_of(w.begin(), w.end(), [](const Rational& x) { return x <= 0; })) {
        // Blend with the uniform function: the defect is convex in T, so a
        // small enough uniform share keeps it below delta.
        Weighted<G> uniform = Weighted<G>::uniform(ops, support);
        Rational du = exact_defect(uniform, reduced);
        Rational lambda(1, 2);
        if (du > sol.objective)
          lambda = std::min(lambda, Rational((delta_exact - sol.objective) / (2 * (du - sol.objective))));
        for (Rational& x : w)
          x = (1 - lambda) * x + lambda * Rational(1, static_cast<long long>(k));
      }
      cert.witness = Weighted<G>(ops, support, w);
      cert.exact_defect = exact_defect(cert.witness, reduced);
      cert.defect = to_double(*cert.exact_defect);
      if (!(*cert.exact_defect < delta_exact))
        throw InternalFault("witness defect not below delta");
    } else {
      LpResult<double> sol = solve_lp(lp.instantiate<double>());
      std::vector<double> w(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(k));
      double floor_w = 1e-9;
      if (std::any_of(w.begin(), w.end(), [&](double x) { return x <= floor_w; })) {
        Weighted<G> uniform = Weighted<G>::uniform(ops, support);
        double du = defect(uniform, reduced);
        double lambda = 0.5;
        if (du > sol.objective)
          lambda = std::min(lambda, (delta - sol.objective) / (2 * (du - sol.objective)));
        for (double& x : w)
          x = (1 - lambda) * std::max(x, 0.0) + lambda / static_cast<double>(k);
      }
      double total = 0;
      for (double x : w)
        total += x;
      for (double& x : w)
        x /= total;
      cert.witness = Weighted<G>(ops, support, w);
      cert.defect = defect(cert.witness, reduced);
    }
    return cert;
  }
  throw SearchExhausted("no support with at most " + std::to_string(opt.max_support) +
                        " points inside radius " + std::to_string(opt.radius) +
                        " reaches defect < " + std::to_string(delta) + "; try a larger radius");
}

} // namespace dualent

#endif // DUALENT_RANK_SEARCH_HPP_
