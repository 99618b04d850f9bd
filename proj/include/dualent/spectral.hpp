// Entropy of integer matrices from their spectrum: sum_j log max(1, |lambda_j|),
// the logarithmic Mahler measure of the characteristic polynomial.

#ifndef DUALENT_SPECTRAL_HPP_
#define DUALENT_SPECTRAL_HPP_

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "roots.hpp"

namespace dualent {

enum class Method { spectral, peters, rank };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::spectral: return "spectral";
    case Method::peters: return "peters";
    case Method::rank: return "rank";
  }
  return "?";
}

struct EntropyEstimate {
  double value = 0;
  Method method = Method::spectral;
  // Root moduli (spectral), growth sizes (peters) or rank sequence (rank).
  std::vector<double> series;
  std::map<std::string, double> extras;
  double tolerance = 0;
  std::string note;
};

// Moduli within this distance of 1 count as exactly 1.
inline constexpr double unit_circle_slack = 1e-10;

inline double mahler_log(const std::vector<Complex>& roots) {
  long double sum = 0;
  for (const Complex& r : roots) {
    long double m = std::abs(r);
    if (m > 1 + unit_circle_slack)
      sum += std::log(m);
  }
  return static_cast<double>(sum);
}

enum class MatrixRole { automorphism, endomorphism };

inline EntropyEstimate eigen_entropy(const IntMatrix& m, double tol = 1e-12,
                                     MatrixRole role = MatrixRole::automorphism) {
  if (!m.square())
    throw ShapeError("eigen_entropy: matrix must be square");
  Int det = determinant(m);
  if (role == MatrixRole::automorphism && det != 1 && det != -1)
    throw InvalidStructure("eigen_entropy: " + m.str() + " is not unimodular (pass the endomorphism role)");
  if (det == 0)
    throw InvalidStructure("eigen_entropy: " + m.str() + " is singular");

  EntropyEstimate e;
  e.method = Method::spectral;
  e.tolerance = tol;
  if (m.dim() == 0)
    return e;
  std::vector<Complex> roots = roots_with_multiplicity(char_poly(m), {tol, 500});
  for (const Complex& r : roots)
    e.series.push_back(static_cast<double>(std::abs(r)));
  e.value = mahler_log(roots);
  return e;
}

} // namespace dualent

#endif // DUALENT_SPECTRAL_HPP_
