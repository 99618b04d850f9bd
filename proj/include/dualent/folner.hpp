// Constructive Folner functions on Z^p and Z^p + F: intervals,
// lattice points of parallelepipeds, and convolution towers.

#ifndef DUALENT_FOLNER_HPP_
#define DUALENT_FOLNER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "peters.hpp"
#include "roots.hpp"
#include "weighted.hpp"

namespace dualent {

// Smallest integer C > 3 with ((C - 2) / (C + 1))^p > 1 - delta / 2.
inline std::int64_t choose_folner_constant(std::size_t p, double delta) {
  if (p < 1)
    throw Error("choose_folner_constant: p must be >= 1");
  if (!(delta > 0))
    throw Error("choose_folner_constant: delta must be positive");
  const double target = 1 - delta / 2;
  for (std::int64_t c = 4;; ++c) {
    double ratio = static_cast<double>(c - 2) / static_cast<double>(c + 1);
    if (std::pow(ratio, static_cast<double>(p)) > target)
      return c;
    if (c > (std::int64_t{1} << 40))
      throw InternalFault("choose_folner_constant: no constant found");
  }
}

// Uniform function on {0, ..., length - 1} in Z.
inline WeightedFunction interval_folner(std::int64_t length) {
  if (length < 1)
    throw Error("interval_folner: length must be >= 1");
  FgAbelianGroup z(1);
  std::vector<AbelianElement> pts;
  for (std::int64_t i = 0; i < length; ++i)
    pts.push_back(make_element(z, {Int(i)}));
  return WeightedFunction::uniform(AbelianOps(z), pts);
}

// {sum s_i v_i : |s_i| <= t}; basis vectors are the columns.
class Parallelepiped {
public:
  static constexpr double membership_slack = 1e-9;

  Parallelepiped(std::initializer_list<std::vector<double>> basis, double t = 1)
    : Parallelepiped(std::vector<std::vector<double>>(basis), t) {}
  Parallelepiped(std::vector<std::vector<double>> basis, double t = 1) : basis_(std::move(basis)), t_(t) {
    const std::size_t p = basis_.size();
    if (p == 0)
      throw ShapeError("parallelepiped needs at least one basis vector");
    if (!(t_ > 0))
      throw Error("parallelepiped half-width must be positive");
    v_.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < p; ++i) {
      if (basis_[i].size() != p)
        throw ShapeError("basis vector " + std::to_string(i) + " has the wrong length");
      for (std::size_t k = 0; k < p; ++k)
        v_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = basis_[i][k];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(v_);
    if (!lu.isInvertible())
      throw InvalidStructure("parallelepiped basis is linearly dependent");
    inv_ = lu.inverse();
  }

  std::size_t dim() const { return basis_.size(); }
  double half_width() const { return t_; }
  const std::vector<std::vector<double>>& basis() const { return basis_; }
  Parallelepiped scaled(double t) const { return Parallelepiped(basis_, t); }

  std::vector<double> coordinates(const std::vector<double>& x) const {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
    Eigen::VectorXd s = inv_ * v;
    return {s.data(), s.data() + s.size()};
  }

  bool contains(const std::vector<double>& x) const {
    for (double s : coordinates(x))
      if (std::fabs(s) > t_ + membership_slack)
        return false;
    return true;
  }

  // Gamma(1) contains the unit sup-norm cube: every corner has coordinates
  // of modulus at most 1.
  bool contains_unit_cube() const {
    const std::size_t p = dim();
    for (std::size_t i = 0; i < p; ++i) {
      double row = 0;
      for (std::size_t k = 0; k < p; ++k)
        row += std::fabs(inv_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      if (row > 1 + membership_slack)
        return false;
    }
    return true;
  }

  // Lattice points inside, sorted.
  std::vector<IntVector> lattice_points() const {
    const std::size_t p = dim();
    std::vector<std::int64_t> bound(p, 0);
    for (std::size_t k = 0; k < p; ++k) {
      double b = 0;
      for (std::size_t i = 0; i < p; ++i)
        b += std::fabs(basis_[i][k]);
      bound[k] = static_cast<std::int64_t>(std::floor(t_ * b + membership_slack));
    }
    std::vector<IntVector> out;
    std::vector<std::int64_t> c(p);
    for (std::size_t k = 0; k < p; ++k)
      c[k] = -bound[k];
    std::vector<double> x(p);
    for (;;) {
      for (std::size_t k = 0; k < p; ++k)
        x[k] = static_cast<double>(c[k]);
      if (contains(x))
        out.emplace_back(c.begin(), c.end());
      std::size_t k = 0;
      while (k < p && c[k] == bound[k])
        c[k] = -bound[k], ++k;
      if (k == p)
        break;
      ++c[k];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<std::vector<double>> basis_;
  double t_;
  Eigen::MatrixXd v_, inv_;
};

// Uniform function on Gamma_chi(C) intersected with Z^p.
inline WeightedFunction parallelepiped_folner(const Parallelepiped& chi, std::int64_t c) {
  if (c < 1)
    throw Error("parallelepiped_folner: C must be >= 1");
  FgAbelianGroup g(chi.dim());
  std::vector<AbelianElement> pts;
  for (IntVector& v : chi.scaled(static_cast<double>(c)).lattice_points())
    pts.push_back(make_element(g, std::move(v)));
  return WeightedFunction::uniform(AbelianOps(g), pts);
}

// |(x + Q) symmetric-difference Q| / |Q| for a finite set Q of lattice points.
inline Rational symmetric_difference_ratio(const std::vector<IntVector>& q, const IntVector& x) {
  if (q.empty())
    throw Error("symmetric_difference_ratio: empty set");
  std::vector<IntVector> sorted = q;
  std::sort(sorted.begin(), sorted.end());
  std::size_t shared = 0;
  for (const IntVector& v : sorted)
    if (std::binary_search(sorted.begin(), sorted.end(), v + x))
      ++shared;
  return Rational(static_cast<long long>(2 * (sorted.size() - shared)), static_cast<long long>(sorted.size()));
}

struct FolnerCheck {
  std::int64_t constant = 0;
  std::size_t shifts = 0;  // lattice points x of Gamma(1) tested
  double worst_ratio = 0;
  bool holds = false;
};

// For every lattice point x of Gamma_chi(1), the symmetric-difference ratio
// of Gamma_chi(C) against its x-translate stays below delta, with C from
// choose_folner_constant.
inline FolnerCheck check_parallelepiped_folner(const Parallelepiped& chi, double delta) {
  if (!chi.scaled(1).contains_unit_cube())
    throw InvalidStructure("parallelepiped does not contain the unit cube");
  FolnerCheck r;
  r.constant = choose_folner_constant(chi.dim(), delta);
  std::vector<IntVector> q = chi.scaled(static_cast<double>(r.constant)).lattice_points();
  r.holds = true;
  for (const IntVector& x : chi.scaled(1).lattice_points()) {
    double ratio = to_double(symmetric_difference_ratio(q, x));
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    r.holds = r.holds && ratio < delta;
    ++r.shifts;
  }
  return r;
}

struct AdaptedBasis {
  Parallelepiped chi;
  std::vector<double> mu;   // max(1, |lambda_i|) per basis vector
  double epsilon = 0;
  std::int64_t n0 = 5, n_max = 15;
  double worst_ratio = 0;   // max |s_i| / ((1 + eps)^n mu_i^n) over the checks
  bool validated = false;
};

namespace impl {

inline Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).convert_to<double>();
  return out;
}

// Right singular vectors for the d smallest singular values.
template <class Matrix>
Matrix near_kernel(const Matrix& a, Eigen::Index d) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(d);
}

// Basis of an invariant subspace on which m acts with a single eigenvalue
// modulus r, chosen so the off-diagonal part is small relative to eps * r.
inline Eigen::MatrixXd flatten_block(const Eigen::MatrixXd& m, const Eigen::MatrixXd& w, double eps, double r) {
  Eigen::MatrixXd a = w.transpose() * m * w;
  Eigen::RealSchur<Eigen::MatrixXd> schur(a);
  if (schur.info() != Eigen::Success)
    throw ConvergenceError("real Schur decomposition did not converge");
  Eigen::MatrixXd t = schur.matrixT();
  Eigen::MatrixXd q = schur.matrixU();
  const Eigen::Index d = t.rows();
  // Block index of each coordinate (2x2 blocks share one index).
  std::vector<int> block(static_cast<std::size_t>(d));
  int b = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    block[static_cast<std::size_t>(i)] = b;
    if (i + 1 < d && std::fabs(t(i + 1, i)) > 0) {
      block[static_cast<std::size_t>(i + 1)] = b;
      ++i;
    }
    ++b;
  }
  double eta = 1;
  for (int iter = 0; iter < 200; ++iter) {
    double off = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      double row = 0;
      for (Eigen::Index j = 0; j < d; ++j) {
        int gap = block[static_cast<std::size_t>(j)] - block[static_cast<std::size_t>(i)];
        if (gap > 0)
          row += std::fabs(t(i, j)) * std::pow(eta, gap);
      }
      off = std::max(off, row);
    }
    if (off <= eps * std::max(r, 1e-300) / 4)
      break;
    eta /= 2;
  }
  Eigen::MatrixXd scale = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    scale(i, i) = std::pow(eta, block[static_cast<std::size_t>(i)]);
  return w * q * scale;
}

} // namespace impl

// A basis of generalized-eigenvector type for m, ordered by decreasing
// eigenvalue modulus and scaled so the unit cube lies in Gamma_chi(1).  The
// inclusion gamma^j(h) in {sum s_i (1 + eps)^n mu_i^n v_i : |s_i| <= 1} is
// checked for 1 <= j <= n, n in [n0, n_max] and h in the corners and edge
// midpoints of the unit cube (unit vectors when p > 4).
inline AdaptedBasis adapted_basis(const IntMatrix& m, double eps, std::int64_t n0 = 5, std::int64_t n_max = 15) {
  if (!(eps > 0))
    throw Error("adapted_basis: epsilon must be positive");
  if (!m.square() || m.rows() == 0)
    throw ShapeError("adapted_basis: square matrix required");
  if (determinant(m) == 0)
    throw InvalidStructure("adapted_basis: matrix is singular");
  const std::size_t p = m.rows();
  const auto pi = static_cast<Eigen::Index>(p);
  const Eigen::MatrixXd a = impl::to_eigen(m);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(pi, pi);

  Eigen::MatrixXd v(pi, pi);
  std::vector<double> mu;
  Eigen::Index col = 0;
  for (const Root& root : complex_roots(char_poly(m))) {
    const auto lam = std::complex<double>(static_cast<double>(root.value.real()), static_cast<double>(root.value.imag()));
    const auto k = static_cast<Eigen::Index>(root.multiplicity);
    const double r = std::abs(lam);
    const bool real = std::fabs(lam.imag()) <= 1e-9 * std::max(1.0, r);
    if (!real && lam.imag() < 0)
      continue; // handled with its conjugate
    Eigen::MatrixXd w;
    if (real) {
      Eigen::MatrixXd b = a - lam.real() * id;
      Eigen::MatrixXd bk = id;
      for (Eigen::Index i = 0; i < k; ++i)
        bk = bk * b;
      w = impl::near_kernel(bk, k);
    } else if (k == 1) {
      Eigen::MatrixXcd b = a.cast<std::complex<double>>() - lam * Eigen::MatrixXcd::Identity(pi, pi);
      Eigen::VectorXcd u = impl::near_kernel(b, 1).col(0);
      w.resize(pi, 2);
      w.col(0) = u.real();
      w.col(1) = u.imag();
    } else {
      Eigen::MatrixXd b = a * a - 2 * lam.real() * a + r * r * id;
      Eigen::MatrixXd bk = id;
      for (Eigen::Index i = 0; i < k; ++i)
        bk = bk * b;
      w = impl::near_kernel(bk, 2 * k);
    }
    if (w.cols() > 1 && (real || k > 1))
      w = impl::flatten_block(a, w, eps, r);
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      v.col(col++) = w.col(j);
      mu.push_back(std::max(1.0, r));
    }
  }
  if (col != pi)
    throw InternalFault("adapted_basis: eigenspace dimensions do not add up");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(v);
  if (!lu.isInvertible())
    throw ConvergenceError("adapted_basis: eigenspace bases are numerically dependent");
  const double scale = lu.inverse().cwiseAbs().rowwise().sum().maxCoeff();
  v *= scale;

  std::vector<std::vector<double>> basis(p, std::vector<double>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      basis[i][j] = v(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  AdaptedBasis out{Parallelepiped(basis), mu, eps, n0, n_max, 0, false};

  // Test vectors: cube corners and edge midpoints ({-1,0,1}^p minus 0).
  std::vector<IntVector> tests;
  if (p <= 4) {
    std::vector<long long> c(p, -1);
    for (;;) {
      if (std::any_of(c.begin(), c.end(), [](long long x) { return x != 0; }))
        tests.emplace_back(c.begin(), c.end());
      std::size_t i = 0;
      while (i < p && c[i] == 1)
        c[i++] = -1;
      if (i == p)
        break;
      ++c[i];
    }
  } else {
    for (std::size_t i = 0; i < p; ++i) {
      tests.push_back(unit_vector(p, i));
      tests.push_back(-unit_vector(p, i));
    }
  }
  for (const IntVector& h : tests) {
    IntVector x = h;
    for (std::int64_t j = 1; j <= n_max; ++j) {
      x = m * x;
      std::vector<double> xd;
      for (const Int& e : x)
        xd.push_back(e.convert_to<double>());
      std::vector<double> s = out.chi.coordinates(xd);
      for (std::int64_t n = std::max(n0, j); n <= n_max; ++n)
        for (std::size_t i = 0; i < p; ++i) {
          double bound = std::pow((1 + eps) * mu[i], static_cast<double>(n));
          out.worst_ratio = std::max(out.worst_ratio, std::fabs(s[i]) / bound);
        }
    }
  }
  out.validated = out.chi.contains_unit_cube() && out.worst_ratio <= 1 + Parallelepiped::membership_slack;
  return out;
}

inline constexpr std::size_t default_tower_cap = 1'000'000;

namespace impl {

template <class W>
std::map<AbelianElement, W> convolve(const FgAbelianGroup& g, const std::map<AbelianElement, W>& x,
                                     const std::map<AbelianElement, W>& y, std::size_t cap) {
  std::map<AbelianElement, W> out;
  for (const auto& [a, wa] : x)
    for (const auto& [b, wb] : y) {
      out[add(g, a, b)] += wa * wb;
      if (out.size() > cap)
        throw CapExceeded("convolution support exceeded cap of " + std::to_string(cap), out.size());
    }
  return out;
}

} // namespace impl

// F_n = f * (f o gamma^-1) * ... * (f o gamma^-(n-1)).  When omega is given,
// checks defect(F_n, gamma^j s) <= defect(f, s) for s in omega, j < n.
inline WeightedFunction convolution_tower(const WeightedFunction& f, const AbelianAutomorphism& gamma, std::size_t n,
                                          const std::vector<AbelianElement>& omega = {},
                                          std::size_t cap = default_tower_cap) {
  if (n < 1)
    throw Error("convolution_tower: n must be >= 1");
  const FgAbelianGroup& g = f.ops().group;
  if (g != gamma.group())
    throw ShapeError("convolution_tower: function and automorphism live on different groups");
  auto run = [&](auto weight_of) {
    using W = decltype(weight_of(std::size_t{0}));
    std::map<AbelianElement, W> acc, layer;
    for (std::size_t i = 0; i < f.size(); ++i)
      acc[f.support()[i]] = weight_of(i);
    std::vector<AbelianElement> moved = f.support();
    for (std::size_t j = 1; j < n; ++j) {
      layer.clear();
      for (std::size_t i = 0; i < moved.size(); ++i) {
        moved[i] = gamma.apply(moved[i]);
        layer[moved[i]] = weight_of(i);
      }
      acc = impl::convolve(g, acc, layer, cap);
    }
    std::vector<AbelianElement> support;
    std::vector<W> weights;
    for (auto& [x, w] : acc)
      if (w > 0) {
        support.push_back(x);
        weights.push_back(w);
      }
    if constexpr (std::is_same_v<W, double>) {
      double total = 0;
      for (double w : weights)
        total += w;
      for (double& w : weights)
        w /= total;
    }
    return WeightedFunction(f.ops(), std::move(support), std::move(weights));
  };
  WeightedFunction tower = f.is_exact() ? run([&](std::size_t i) { return f.exact_weights()[i]; })
                                        : run([&](std::size_t i) { return f.weights()[i]; });
  if (!omega.empty()) {
    std::vector<AbelianElement> shifted = omega;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < omega.size(); ++i) {
        double before = translation_defect(f, omega[i]);
        double after = translation_defect(tower, shifted[i]);
        if (after > before + 1e-12)
          throw InternalFault("convolution tower raised the defect at " + shifted[i].str());
        shifted[i] = gamma.apply(shifted[i]);
      }
    }
  }
  return tower;
}

} // namespace dualent

#endif // DUALENT_FOLNER_HPP_
