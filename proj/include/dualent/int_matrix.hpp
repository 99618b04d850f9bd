// Exact integer vectors and matrices (arbitrary precision).

#ifndef DUALENT_INT_MATRIX_HPP_
#define DUALENT_INT_MATRIX_HPP_

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fail.hpp"

namespace dualent {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Int>;

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Int(0)); }

inline IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw ShapeError("vector length mismatch in addition");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

inline IntVector operator-(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = -a[i];
  return r;
}

inline IntVector operator-(const IntVector& a, const IntVector& b) { return a + (-b); }

// Canonical representative of x modulo m (m >= 1), in [0, m).
inline Int mod_floor(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0)
    r += m;
  return r;
}

// Row-major rectangular integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw ShapeError("ragged matrix literal");
      for (long long v : row)
        data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw ShapeError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j)
        m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols) {
    return from_rows(cols).transposed();
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const IntVector& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::size_t dim() const {
    if (!square())
      throw ShapeError("dim() on a non-square matrix");
    return rows_;
  }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const {
    return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }
  IntVector column(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      v[r] = (*this)(r, c);
    return v;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  Int trace() const {
    Int t = 0;
    for (std::size_t i = 0; i < dim(); ++i)
      t += (*this)(i, i);
    return t;
  }

  Int max_abs_entry() const {
    Int m = 0;
    for (const Int& v : data_)
      m = std::max(m, Int(abs(v)));
    return m;
  }

  bool is_identity() const { return square() && *this == identity(rows_); }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // Elementary row/column operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
      return;
    for (std::size_t r = 0; r < rows_; ++r)
      std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(dst, c) += k * (*this)(src, c);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(r, c) = -(*this)(r, c);
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, c) = -(*this)(r, c);
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? ",[" : "[");
      for (std::size_t c = 0; c < cols_; ++c)
        os << (c ? "," : "") << (*this)(r, c);
      os << ']';
    }
    os << ']';
    return os.str();
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.str(); }

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matrix product shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size())
    throw ShapeError("matrix-vector shape mismatch");
  IntVector r = zero_vector(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r[i] += a(i, j) * v[j];
  return r;
}

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("matrix sum shape mismatch");
  IntMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) += b(i, j);
  return r;
}

inline IntMatrix scaled(const IntMatrix& a, const Int& k) {
  IntMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) *= k;
  return r;
}

// Fraction-free (Bareiss) determinant; every division is exact.
inline Int determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0)
    return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = n;
      for (std::size_t r = k + 1; r < n; ++r)
        if (a(r, k) != 0) {
          swap_with = r;
          break;
        }
      if (swap_with == n)
        return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& m) {
  if (!m.square())
    return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

inline IntMatrix minor_matrix(const IntMatrix& m, std::size_t skip_r, std::size_t skip_c) {
  IntMatrix r(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, ri = 0; i < m.rows(); ++i) {
    if (i == skip_r)
      continue;
    for (std::size_t j = 0, rj = 0; j < m.cols(); ++j) {
      if (j == skip_c)
        continue;
      r(ri, rj++) = m(i, j);
    }
    ++ri;
  }
  return r;
}

inline IntMatrix adjugate(const IntMatrix& m) {
  const std::size_t n = m.dim();
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Int c = determinant(minor_matrix(m, i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : Int(-c);
    }
  return adj;
}

// Exact inverse of a unimodular matrix: adj(M) / det(M).
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  Int d = determinant(m);
  if (d != 1 && d != -1)
    throw InvalidStructure("matrix " + m.str() + " is not unimodular (det = " + d.str() + ")");
  return scaled(adjugate(m), d);
}

// M^k for any integer k; negative k requires a unimodular M.
inline IntMatrix power(const IntMatrix& m, long long k) {
  IntMatrix base = k < 0 ? inverse_unimodular(m) : m;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  IntMatrix result = IntMatrix::identity(m.dim());
  while (e) {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e)
      base = base * base;
  }
  return result;
}

inline IntMatrix block_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

inline std::string vector_str(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

} // namespace dualent

#endif // DUALENT_INT_MATRIX_HPP_
