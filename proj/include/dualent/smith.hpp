// Smith and Hermite normal forms over the integers.

#ifndef DUALENT_SMITH_HPP_
#define DUALENT_SMITH_HPP_

#include <cstddef>
#include <optional>
#include <utility>

#include "int_matrix.hpp"

namespace dualent {

// U * M * V == D, U and V unimodular, D diagonal with d_i | d_{i+1}
// and non-negative entries.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0)
        ++r;
    return r;
  }
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      d.push_back(D(i, i));
    return d;
  }
};

namespace impl {

// Position of the nonzero entry of least magnitude in the trailing block
// starting at (t, t); ties broken by row then column.
inline std::optional<std::pair<std::size_t, std::size_t>>
smallest_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t r = t; r < a.rows(); ++r)
    for (std::size_t c = t; c < a.cols(); ++c) {
      if (a(r, c) == 0)
        continue;
      Int v = abs(a(r, c));
      if (!best || v < best_abs) {
        best = {r, c};
        best_abs = v;
      }
    }
  return best;
}

// Floor-style quotient so that remainders end up in [0, |b|).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    q -= 1;
  return q;
}

} // namespace impl

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      auto piv = impl::smallest_pivot(a, t);
      if (!piv)
        break;
      auto [pr, pc] = *piv;
      a.swap_rows(t, pr);
      u.swap_rows(t, pr);
      a.swap_cols(t, pc);
      v.swap_cols(t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0)
          continue;
        Int q = impl::floor_div(a(r, t), a(t, t));
        a.add_row_multiple(r, t, -q);
        u.add_row_multiple(r, t, -q);
        if (a(r, t) != 0)
          clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0)
          continue;
        Int q = impl::floor_div(a(t, c), a(t, t));
        a.add_col_multiple(c, t, -q);
        v.add_col_multiple(c, t, -q);
        if (a(t, c) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // Row/column t is isolated; enforce divisibility on the remaining block.
      std::optional<std::size_t> offending;
      for (std::size_t r = t + 1; r < rows && !offending; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            offending = r;
            break;
          }
      if (!offending)
        break;
      a.add_row_multiple(t, *offending, 1);
      u.add_row_multiple(t, *offending, 1);
    }
    if (t < rows && t < cols && a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

// Row-style Hermite normal form of a nonsingular square matrix:
// U * M == H, U unimodular, H upper triangular with positive diagonal and
// entries above the diagonal reduced into [0, h_jj).
struct HermiteForm {
  IntMatrix U;
  IntMatrix H;
};

inline HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    // Euclid down column c over rows c..n-1.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t r = c; r < n; ++r)
        if (h(r, c) != 0 && (!best || abs(h(r, c)) < abs(h(*best, c))))
          best = r;
      if (!best)
        throw InvalidStructure("hermite_normal_form: singular matrix " + m.str());
      h.swap_rows(c, *best);
      u.swap_rows(c, *best);
      bool done = true;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (h(r, c) == 0)
          continue;
        Int q = impl::floor_div(h(r, c), h(c, c));
        h.add_row_multiple(r, c, -q);
        u.add_row_multiple(r, c, -q);
        if (h(r, c) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (h(c, c) < 0) {
      h.negate_row(c);
      u.negate_row(c);
    }
    for (std::size_t r = 0; r < c; ++r) {
      Int q = impl::floor_div(h(r, c), h(c, c));
      if (q != 0) {
        h.add_row_multiple(r, c, -q);
        u.add_row_multiple(r, c, -q);
      }
    }
  }
  return {std::move(u), std::move(h)};
}

} // namespace dualent

#endif // DUALENT_SMITH_HPP_
