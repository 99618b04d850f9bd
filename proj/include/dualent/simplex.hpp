// Dense two-phase primal simplex with Bland's anti-cycling rule.
//
//   minimize c.x  subject to  a_i.x (<=|=|>=) b_i,  x >= 0
//
// Works over exact rationals (Rational) or doubles; the scalar traits below
// decide how "zero" and "negative" are judged.

#ifndef DUALENT_SIMPLEX_HPP_
#define DUALENT_SIMPLEX_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "int_matrix.hpp"

namespace dualent {

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static bool negative(const Rational& x) { return x < 0; }
  static bool positive(const Rational& x) { return x > 0; }
  static bool zero(const Rational& x) { return x == 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr double eps = 1e-11;
  static bool negative(double x) { return x < -eps; }
  static bool positive(double x) { return x > eps; }
  static bool zero(double x) { return std::fabs(x) <= eps; }
};

enum class Sense { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<T> objective; // minimized
  struct Row {
    std::vector<std::pair<std::size_t, T>> terms;
    Sense sense;
    T rhs;
  };
  std::vector<Row> rows;

  explicit LinearProgram(std::size_t n = 0) : variables(n), objective(n, T(0)) {}

  void add_row(std::vector<std::pair<std::size_t, T>> terms, Sense sense, T rhs) {
    rows.push_back({std::move(terms), sense, std::move(rhs)});
  }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  T objective{};
  std::vector<T> x;
  std::size_t pivots = 0;
};

template <class T>
class SimplexSolver {
public:
  explicit SimplexSolver(const LinearProgram<T>& lp) { build(lp); }

  LpResult<T> solve() {
    LpResult<T> res;
    // Phase 1: minimize the artificial sum.
    if (artificials_ > 0) {
      set_objective_phase1();
      if (!run(res.pivots, /*allow_artificial_entering=*/true))
        throw InternalFault("phase 1 reported unbounded");
      if (Tr::positive(-obj_[cols_])) { // objective row stores -value
        res.status = LpStatus::infeasible;
        return res;
      }
      drive_out_artificials(res.pivots);
    }
    set_objective_phase2();
    if (!run(res.pivots, false)) {
      res.status = LpStatus::unbounded;
      return res;
    }
    res.status = LpStatus::optimal;
    res.objective = -obj_[cols_];
    res.x.assign(n_, T(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_)
        res.x[basis_[r]] = tab_[r][cols_];
    return res;
  }

private:
  using Tr = ScalarTraits<T>;

  void build(const LinearProgram<T>& lp) {
    n_ = lp.variables;
    m_ = lp.rows.size();
    cost_ = lp.objective;
    std::size_t slacks = 0;
    for (const auto& row : lp.rows)
      if (row.sense != Sense::eq)
        ++slacks;
    // Column layout: originals | slacks | artificials | rhs.
    std::vector<bool> needs_art(m_);
    std::vector<int> flip(m_, 1);
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& row = lp.rows[r];
      if (Tr::negative(row.rhs))
        flip[r] = -1;
      Sense s = row.sense;
      if (flip[r] < 0 && s != Sense::eq)
        s = s == Sense::le ? Sense::ge : Sense::le;
      needs_art[r] = s != Sense::le;
      if (needs_art[r])
        ++artificials_;
    }
    slack_start_ = n_;
    art_start_ = n_ + slacks;
    cols_ = art_start_ + artificials_;
    tab_.assign(m_, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(m_, 0);
    std::size_t slack = slack_start_, art = art_start_;
    for (std::size_t r = 0; r < m_; ++r) {
      const auto& row = lp.rows[r];
      T sign = flip[r] < 0 ? T(-1) : T(1);
      for (const auto& [j, v] : row.terms)
        tab_[r][j] += sign * v;
      tab_[r][cols_] = sign * row.rhs;
      if (row.sense != Sense::eq) {
        // le gets +slack, ge gets -surplus (before the flip).
        T s = row.sense == Sense::le ? T(1) : T(-1);
        tab_[r][slack] = sign * s;
        if (!needs_art[r])
          basis_[r] = slack;
        ++slack;
      }
      if (needs_art[r]) {
        tab_[r][art] = T(1);
        basis_[r] = art++;
      }
    }
  }

  void set_objective_phase1() {
    obj_.assign(cols_ + 1, T(0));
    for (std::size_t j = art_start_; j < cols_; ++j)
      obj_[j] = T(1);
    price_out();
  }

  void set_objective_phase2() {
    obj_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j < n_; ++j)
      obj_[j] = cost_[j];
    price_out();
  }

  // Make reduced costs of basic columns zero.
  void price_out() {
    for (std::size_t r = 0; r < m_; ++r) {
      T f = obj_[basis_[r]];
      if (Tr::zero(f))
        continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        obj_[j] -= f * tab_[r][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    T inv = T(1) / tab_[r][c];
    for (std::size_t j = 0; j <= cols_; ++j)
      tab_[r][j] *= inv;
    tab_[r][c] = T(1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || Tr::zero(tab_[i][c]))
        continue;
      T f = tab_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!Tr::zero(tab_[r][j]))
          tab_[i][j] -= f * tab_[r][j];
      tab_[i][c] = T(0);
    }
    T f = obj_[c];
    if (!Tr::zero(f)) {
      for (std::size_t j = 0; j <= cols_; ++j)
        if (!Tr::zero(tab_[r][j]))
          obj_[j] -= f * tab_[r][j];
      obj_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Returns false on unboundedness.
  bool run(std::size_t& pivots, bool allow_artificial_entering) {
    const std::size_t limit = allow_artificial_entering ? cols_ : art_start_;
    for (;;) {
      // Bland: lowest-index column with negative reduced cost.
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit; ++j)
        if (Tr::negative(obj_[j])) {
          enter = j;
          break;
        }
      if (!enter)
        return true;
      std::optional<std::size_t> leave;
      T best_ratio{};
      for (std::size_t r = 0; r < m_; ++r) {
        if (!Tr::positive(tab_[r][*enter]))
          continue;
        T ratio = tab_[r][cols_] / tab_[r][*enter];
        if (!leave || ratio < best_ratio || (!(best_ratio < ratio) && basis_[r] < basis_[*leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (!leave)
        return false;
      pivot(*leave, *enter);
      ++pivots;
    }
  }

  // Pivot any zero-valued artificial out of the basis, dropping redundant rows.
  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < art_start_)
        continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_start_; ++j)
        if (!Tr::zero(tab_[r][j])) {
          col = j;
          break;
        }
      if (col) {
        pivot(r, *col);
        ++pivots;
      } else {
        // Redundant constraint: zero the row so it never matters again.
        for (T& v : tab_[r])
          v = T(0);
      }
    }
  }

  std::size_t n_ = 0, m_ = 0, cols_ = 0;
  std::size_t slack_start_ = 0, art_start_ = 0, artificials_ = 0;
  std::vector<T> cost_;
  std::vector<std::vector<T>> tab_;
  std::vector<T> obj_;
  std::vector<std::size_t> basis_;
};

template <class T>
LpResult<T> solve_lp(const LinearProgram<T>& lp) {
  return SimplexSolver<T>(lp).solve();
}

} // namespace dualent

#endif // DUALENT_SIMPLEX_HPP_
