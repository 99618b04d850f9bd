// Integer / rational polynomials, exact characteristic polynomials and
// square-free factorization.

#ifndef DUALENT_POLYNOMIAL_HPP_
#define DUALENT_POLYNOMIAL_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "int_matrix.hpp"

namespace dualent {

// Coefficients in ascending order: c[0] + c[1] t + ... + c[n] t^n.
struct IntPolynomial {
  std::vector<Int> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  const Int& leading() const { return coeffs.back(); }

  Int evaluate(const Int& t) const {
    Int r = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
      r = r * t + coeffs[i];
    return r;
  }

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string str() const {
    std::string s;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      if (coeffs[i] == 0)
        continue;
      Int c = coeffs[i];
      bool neg = c < 0;
      Int a = neg ? Int(-c) : c;
      if (!s.empty())
        s += neg ? " - " : " + ";
      else if (neg)
        s += "-";
      if (a != 1 || i == 0)
        s += a.str();
      if (i > 0)
        s += i == 1 ? "t" : "t^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }
};

// det(tI - M) by the Faddeev-LeVerrier recurrence.  The divisions by k are
// exact over Z because every coefficient of the result is an integer.
inline IntPolynomial char_poly(const IntMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Int> c(n + 1, Int(0));
  c[n] = 1;
  IntMatrix mk(n, n); // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i)
      next(i, i) += c[n - k + 1];
    mk = std::move(next);
    Int tr = (m * mk).trace();
    if (tr % Int(k) != 0)
      throw InternalFault("Faddeev-LeVerrier: inexact division");
    c[n - k] = -tr / Int(k);
  }
  return {std::move(c)};
}

// Dense polynomial over Q, ascending coefficients, no trailing zeros.
using RationalPolynomial = std::vector<Rational>;

namespace poly {

inline void trim(RationalPolynomial& p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

inline RationalPolynomial from_int(const IntPolynomial& p) {
  RationalPolynomial r(p.coeffs.begin(), p.coeffs.end());
  trim(r);
  return r;
}

inline bool is_constant(const RationalPolynomial& p) { return p.size() <= 1; }

inline RationalPolynomial derivative(const RationalPolynomial& p) {
  RationalPolynomial d;
  for (std::size_t i = 1; i < p.size(); ++i)
    d.push_back(p[i] * Rational(static_cast<long long>(i)));
  trim(d);
  return d;
}

inline RationalPolynomial subtract(RationalPolynomial a, const RationalPolynomial& b) {
  if (a.size() < b.size())
    a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    a[i] -= b[i];
  trim(a);
  return a;
}

inline RationalPolynomial monic(RationalPolynomial p) {
  if (p.empty())
    return p;
  Rational lead = p.back();
  for (Rational& c : p)
    c /= lead;
  return p;
}

// a = q * b + r with deg r < deg b.
inline std::pair<RationalPolynomial, RationalPolynomial> divmod(RationalPolynomial a, const RationalPolynomial& b) {
  if (b.empty())
    throw Error("polynomial division by zero");
  trim(a);
  if (a.size() < b.size())
    return {{}, a};
  RationalPolynomial q(a.size() - b.size() + 1, Rational(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational f = a[i + b.size() - 1] / b.back();
    q[i] = f;
    if (f == 0)
      continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[i + j] -= f * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

inline RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RationalPolynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline RationalPolynomial exact_quotient(const RationalPolynomial& a, const RationalPolynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty())
    throw InternalFault("polynomial quotient is not exact");
  return q;
}

} // namespace poly

// f = c * prod_i factor_i^multiplicity_i with every factor square-free, monic.
struct SquareFreeFactor {
  RationalPolynomial factor;
  std::size_t multiplicity;
};

// Yun's algorithm over Q.
inline std::vector<SquareFreeFactor> square_free_factorization(const IntPolynomial& f) {
  std::vector<SquareFreeFactor> out;
  RationalPolynomial p = poly::monic(poly::from_int(f));
  if (poly::is_constant(p))
    return out;
  RationalPolynomial dp = poly::derivative(p);
  RationalPolynomial a = poly::gcd(p, dp);
  RationalPolynomial b = poly::exact_quotient(p, a);
  RationalPolynomial c = poly::exact_quotient(dp, a);
  RationalPolynomial d = poly::subtract(c, poly::derivative(b));
  for (std::size_t i = 1; !poly::is_constant(b); ++i) {
    RationalPolynomial ai = poly::gcd(b, d);
    b = poly::exact_quotient(b, ai);
    c = poly::exact_quotient(d, ai);
    d = poly::subtract(c, poly::derivative(b));
    if (!poly::is_constant(ai))
      out.push_back({std::move(ai), i});
  }
  return out;
}

} // namespace dualent

#endif // DUALENT_POLYNOMIAL_HPP_
