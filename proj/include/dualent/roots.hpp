// All complex roots of an integer polynomial, with multiplicity.
//
// The polynomial is split into square-free factors exactly (over Q); each
// factor has simple roots, which the Aberth-Ehrlich iteration finds to
// full extended precision.  Multiplicities come from the exact split, so
// repeated roots do not lose accuracy.

#ifndef DUALENT_ROOTS_HPP_
#define DUALENT_ROOTS_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace dualent {

using Complex = std::complex<long double>;

struct RootOptions {
  double tol = 1e-12;
  int max_iterations = 500;
};

struct Root {
  Complex value;
  std::size_t multiplicity = 1;
  double residual = 0; // |q(r)| / sum |q_i| |r|^i for the square-free factor q
};

namespace impl {

inline std::vector<long double> to_long_double(const RationalPolynomial& p) {
  std::vector<long double> r;
  r.reserve(p.size());
  for (const Rational& c : p)
    r.push_back(c.convert_to<long double>());
  return r;
}

// Value, derivative and absolute-value scale by Horner.
struct Horner {
  Complex value, derivative;
  long double scale;
};

inline Horner horner(const std::vector<long double>& c, Complex z) {
  Complex v = 0, d = 0;
  long double s = 0, az = std::abs(z);
  for (std::size_t i = c.size(); i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
    s = s * az + std::fabs(c[i]);
  }
  return {v, d, s};
}

// Simple roots of a square-free polynomial (ascending coefficients).
inline std::vector<Complex> aberth(const std::vector<long double>& c, const RootOptions& opt) {
  const std::size_t n = c.size() - 1;
  if (n == 1)
    return {Complex(-c[0] / c[1], 0)};

  long double bound = 0;
  for (std::size_t i = 0; i < n; ++i)
    bound = std::max(bound, std::fabs(c[i] / c[n]));
  const long double radius = 1 + bound;
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double angle = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = std::polar(radius, angle);
  }

  const long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<bool> done(n, false);
  for (int it = 0; it < opt.max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k])
        continue;
      Horner h = horner(c, z[k]);
      if (std::abs(h.value) <= 4 * eps * h.scale) {
        done[k] = true;
        continue;
      }
      Complex newton = h.value / h.derivative;
      Complex repulsion = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k)
          repulsion += Complex(1) / (z[k] - z[j]);
      Complex w = newton / (Complex(1) - newton * repulsion);
      z[k] -= w;
      if (std::abs(w) <= 8 * eps * std::abs(z[k]))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done)
      return z;
  }
  throw ConvergenceError("Aberth iteration did not converge in " + std::to_string(opt.max_iterations) +
                         " iterations (degree " + std::to_string(n) + ")");
}

} // namespace impl

// Roots of p grouped by multiplicity; every root of a factor q satisfies
// |q(r)| <= tol * sum |q_i| |r|^i or ConvergenceError is thrown.
inline std::vector<Root> complex_roots(const IntPolynomial& p, const RootOptions& opt = {}) {
  if (p.degree() < 1)
    throw Error("complex_roots: polynomial of degree < 1");
  if (!(opt.tol > 0))
    throw Error("complex_roots: tolerance must be positive");
  std::vector<Root> out;
  for (const SquareFreeFactor& f : square_free_factorization(p)) {
    std::vector<long double> c = impl::to_long_double(f.factor);
    for (Complex z : impl::aberth(c, opt)) {
      // One polishing Newton step; harmless on converged simple roots.
      impl::Horner h = impl::horner(c, z);
      if (std::abs(h.derivative) > 0)
        z -= h.value / h.derivative;
      h = impl::horner(c, z);
      double residual = h.scale > 0 ? static_cast<double>(std::abs(h.value) / h.scale) : 0.0;
      if (residual > opt.tol)
        throw ConvergenceError("root residual " + std::to_string(residual) + " exceeds tolerance");
      out.push_back({z, f.multiplicity, residual});
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (std::abs(a.value) != std::abs(b.value))
      return std::abs(a.value) > std::abs(b.value);
    if (a.value.real() != b.value.real())
      return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });
  return out;
}

// Flattened root list (each root repeated by multiplicity).
inline std::vector<Complex> roots_with_multiplicity(const IntPolynomial& p, const RootOptions& opt = {}) {
  std::vector<Complex> r;
  for (const Root& root : complex_roots(p, opt))
    r.insert(r.end(), root.multiplicity, root.value);
  return r;
}

} // namespace dualent

#endif // DUALENT_ROOTS_HPP_
