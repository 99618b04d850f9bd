// Extensions 1 -> Z^p -> G -> F -> 1 with F finite, given by a unital
// splitting phi: elements are pairs (h, a) standing for phi(h) a, with
//
//   (h1, a1)(h2, a2) = (h1 h2, theta(h1, h2) + c(h2) a1 + a2)
//
// where c(h) a = phi(h)^-1 a phi(h) and phi(h1) phi(h2) = phi(h1 h2) theta(h1, h2).

#ifndef DUALENT_CRYSTAL_HPP_
#define DUALENT_CRYSTAL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "group_ops.hpp"
#include "rank_search.hpp"
#include "smith.hpp"
#include "spectral.hpp"

namespace dualent {

struct CrystalElement {
  std::size_t f = 0;
  IntVector lattice;

  friend bool operator==(const CrystalElement&, const CrystalElement&) = default;
  friend bool operator<(const CrystalElement& a, const CrystalElement& b) {
    if (a.f != b.f)
      return a.f < b.f;
    return a.lattice < b.lattice;
  }
};

// Multiplication table of Z/n with names 0..n-1.
inline FiniteGroupOps cyclic_group(std::size_t n) {
  FiniteGroupOps g;
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    g.names.push_back(std::to_string(a));
    for (std::size_t b = 0; b < n; ++b)
      g.table[a][b] = (a + b) % n;
  }
  return g;
}

class CrystalGroup {
public:
  CrystalGroup() = default;

  // action[h] = c(h); theta[h][k] = theta(h, k).
  CrystalGroup(std::size_t p, FiniteGroupOps quotient, std::vector<IntMatrix> action,
               std::vector<std::vector<IntVector>> theta = {})
    : p_(p), f_(std::move(quotient)), c_(std::move(action)), theta_(std::move(theta)) {
    const std::size_t n = f_.table.size();
    if (theta_.empty())
      theta_.assign(n, std::vector<IntVector>(n, zero_vector(p_)));
    validate();
  }

  std::size_t rank() const { return p_; }
  std::size_t order() const { return f_.table.size(); }
  const FiniteGroupOps& quotient() const { return f_; }
  const IntMatrix& action(std::size_t h) const { return c_.at(h); }
  const IntVector& theta(std::size_t h, std::size_t k) const { return theta_.at(h).at(k); }
  std::size_t one() const { return f_.identity_index; }
  std::size_t fmul(std::size_t a, std::size_t b) const { return f_.table[a][b]; }
  std::size_t finv(std::size_t a) const { return f_.inverse(a); }
  const std::string& name(std::size_t h) const { return f_.names.at(h); }

  CrystalElement identity() const { return {one(), zero_vector(p_)}; }
  CrystalElement element(std::size_t h, IntVector a) const {
    CrystalElement x{h, std::move(a)};
    check(x);
    return x;
  }

  void check(const CrystalElement& x) const {
    if (x.f >= order())
      throw ShapeError("finite part " + std::to_string(x.f) + " out of range");
    if (x.lattice.size() != p_)
      throw ShapeError("lattice part has length " + std::to_string(x.lattice.size()) + ", expected " +
                       std::to_string(p_));
  }

  CrystalElement multiply(const CrystalElement& x, const CrystalElement& y) const {
    return {fmul(x.f, y.f), theta(x.f, y.f) + c_[y.f] * x.lattice + y.lattice};
  }

  CrystalElement inverse(const CrystalElement& x) const {
    std::size_t hi = finv(x.f);
    return {hi, -(theta(x.f, hi) + c_[hi] * x.lattice)};
  }

  CrystalElement power(const CrystalElement& x, Int k) const {
    CrystalElement base = k < 0 ? inverse(x) : x;
    if (k < 0)
      k = -k;
    CrystalElement acc = identity();
    while (k > 0) {
      if ((k & 1) != 0)
        acc = multiply(acc, base);
      base = multiply(base, base);
      k >>= 1;
    }
    return acc;
  }

  std::string describe(const CrystalElement& x) const { return "(" + name(x.f) + "; " + vector_str(x.lattice) + ")"; }

  // F x {0, e_1, ..., e_p}: the products of these determine the whole law.
  std::vector<CrystalElement> probe_elements() const {
    std::vector<CrystalElement> out;
    for (std::size_t h = 0; h < order(); ++h) {
      out.push_back({h, zero_vector(p_)});
      for (std::size_t i = 0; i < p_; ++i)
        out.push_back({h, unit_vector(p_, i)});
    }
    return out;
  }

  std::string str() const {
    return "Z^" + std::to_string(p_) + " by a group of order " + std::to_string(order());
  }

private:
  void validate() const {
    const std::size_t n = order();
    if (n == 0)
      throw InvalidStructure("finite quotient is empty");
    if (f_.identity_index >= n)
      throw InvalidStructure("identity index out of range");
    if (f_.names.size() != n)
      throw ShapeError("need one name per element of the finite quotient");
    for (std::size_t a = 0; a < n; ++a) {
      if (f_.table[a].size() != n)
        throw ShapeError("multiplication table row " + std::to_string(a) + " has the wrong length");
      std::vector<bool> row(n, false), col(n, false);
      for (std::size_t b = 0; b < n; ++b) {
        if (f_.table[a][b] >= n || f_.table[b][a] >= n)
          throw InvalidStructure("multiplication table entry out of range");
        row[f_.table[a][b]] = true;
        col[f_.table[b][a]] = true;
      }
      if (std::count(row.begin(), row.end(), true) != static_cast<long>(n) ||
          std::count(col.begin(), col.end(), true) != static_cast<long>(n))
        throw InvalidStructure("multiplication table is not a Latin square");
      if (f_.table[f_.identity_index][a] != a || f_.table[a][f_.identity_index] != a)
        throw InvalidStructure("identity element does not act trivially");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (fmul(fmul(a, b), c) != fmul(a, fmul(b, c)))
            throw InvalidStructure("finite quotient is not associative at (" + name(a) + ", " + name(b) + ", " +
                                   name(c) + ")");
    if (c_.size() != n)
      throw ShapeError("need one action matrix per element of the finite quotient");
    for (std::size_t h = 0; h < n; ++h) {
      if (c_[h].rows() != p_ || c_[h].cols() != p_)
        throw ShapeError("action matrix of " + name(h) + " has the wrong shape");
      if (!is_unimodular(c_[h]))
        throw InvalidStructure("action matrix of " + name(h) + " is not unimodular");
    }
    if (!c_[one()].is_identity())
      throw InvalidStructure("the identity must act trivially");
    if (theta_.size() != n)
      throw ShapeError("cocycle table has the wrong number of rows");
    for (std::size_t h = 0; h < n; ++h) {
      if (theta_[h].size() != n)
        throw ShapeError("cocycle table row " + name(h) + " has the wrong length");
      for (const IntVector& v : theta_[h])
        if (v.size() != p_)
          throw ShapeError("cocycle value has the wrong length");
    }
    for (std::size_t h = 0; h < n; ++h)
      if (theta(one(), h) != zero_vector(p_) || theta(h, one()) != zero_vector(p_))
        throw InvalidStructure("cocycle is not unital at " + name(h));
    // Both sides of (xy)z = x(yz) are affine in the lattice parts, so zero
    // parts plus one unit vector in a single slot decide associativity.
    std::vector<IntVector> units;
    for (std::size_t i = 0; i < p_; ++i)
      units.push_back(unit_vector(p_, i));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          CrystalElement x{a, zero_vector(p_)}, y{b, zero_vector(p_)}, z{c, zero_vector(p_)};
          auto assoc = [&] {
            if (multiply(multiply(x, y), z) != multiply(x, multiply(y, z)))
              throw InvalidStructure("multiplication is not associative at " + describe(x) + ", " + describe(y) +
                                     ", " + describe(z));
          };
          assoc();
          for (const IntVector& e : units) {
            for (CrystalElement* slot : {&x, &y, &z}) {
              slot->lattice = e;
              assoc();
              slot->lattice = zero_vector(p_);
            }
          }
        }
  }

  std::size_t p_ = 0;
  FiniteGroupOps f_;
  std::vector<IntMatrix> c_;
  std::vector<std::vector<IntVector>> theta_;
};

// gamma(h, a) = (q(h), t(h) + sigma a).
class CrystalAutomorphism {
public:
  CrystalAutomorphism() = default;

  CrystalAutomorphism(const CrystalGroup& g, std::vector<std::size_t> quotient_part, IntMatrix lattice_part,
                      std::vector<IntVector> translation_part = {})
    : q_(std::move(quotient_part)), sigma_(std::move(lattice_part)), t_(std::move(translation_part)) {
    if (t_.empty())
      t_.assign(g.order(), zero_vector(g.rank()));
    validate(g);
  }

  static CrystalAutomorphism identity(const CrystalGroup& g) {
    std::vector<std::size_t> q(g.order());
    for (std::size_t h = 0; h < q.size(); ++h)
      q[h] = h;
    return CrystalAutomorphism(g, q, IntMatrix::identity(g.rank()));
  }

  const std::vector<std::size_t>& quotient_part() const { return q_; }
  const IntMatrix& lattice_part() const { return sigma_; }
  const std::vector<IntVector>& translation_part() const { return t_; }

  CrystalElement apply(const CrystalElement& x) const { return {q_[x.f], t_[x.f] + sigma_ * x.lattice}; }

  friend bool operator==(const CrystalAutomorphism&, const CrystalAutomorphism&) = default;

  void validate(const CrystalGroup& g) const {
    const std::size_t n = g.order();
    if (q_.size() != n || t_.size() != n)
      throw ShapeError("automorphism data must have one entry per element of the finite quotient");
    std::vector<bool> hit(n, false);
    for (std::size_t h : q_) {
      if (h >= n || hit[h])
        throw InvalidStructure("quotient part is not a bijection");
      hit[h] = true;
    }
    if (sigma_.rows() != g.rank() || sigma_.cols() != g.rank())
      throw ShapeError("lattice part has the wrong shape");
    if (!is_unimodular(sigma_))
      throw InvalidStructure("lattice part " + sigma_.str() + " is not unimodular");
    for (const IntVector& v : t_)
      if (v.size() != g.rank())
        throw ShapeError("translation vector has the wrong length");
    // gamma(xy) = gamma(x) gamma(y) is affine in the lattice parts.
    const auto probes = g.probe_elements();
    for (const auto& x : probes)
      for (const auto& y : probes)
        if (apply(g.multiply(x, y)) != g.multiply(apply(x), apply(y)))
          throw InvalidStructure("not a homomorphism at " + g.describe(x) + ", " + g.describe(y));
  }

private:
  std::vector<std::size_t> q_;
  IntMatrix sigma_;
  std::vector<IntVector> t_;
};

// a o b.
inline CrystalAutomorphism compose(const CrystalGroup& g, const CrystalAutomorphism& a, const CrystalAutomorphism& b) {
  std::vector<std::size_t> q(g.order());
  std::vector<IntVector> t(g.order());
  for (std::size_t h = 0; h < g.order(); ++h) {
    q[h] = a.quotient_part()[b.quotient_part()[h]];
    t[h] = a.translation_part()[b.quotient_part()[h]] + a.lattice_part() * b.translation_part()[h];
  }
  return CrystalAutomorphism(g, q, a.lattice_part() * b.lattice_part(), t);
}

inline CrystalAutomorphism invert(const CrystalGroup& g, const CrystalAutomorphism& a) {
  std::vector<std::size_t> q(g.order());
  for (std::size_t h = 0; h < g.order(); ++h)
    q[a.quotient_part()[h]] = h;
  IntMatrix s = inverse_unimodular(a.lattice_part());
  std::vector<IntVector> t(g.order());
  for (std::size_t h = 0; h < g.order(); ++h)
    t[h] = -(s * a.translation_part()[q[h]]);
  return CrystalAutomorphism(g, q, s, t);
}

inline CrystalAutomorphism power(const CrystalGroup& g, const CrystalAutomorphism& a, long long k) {
  CrystalAutomorphism base = k < 0 ? invert(g, a) : a;
  unsigned long long e = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  CrystalAutomorphism acc = CrystalAutomorphism::identity(g);
  while (e > 0) {
    if (e & 1)
      acc = compose(g, acc, base);
    base = compose(g, base, base);
    e >>= 1;
  }
  return acc;
}

// Z(S_A) for the stabilizer S_A = F0 x Z^p of the lattice, F0 = {h : c(h) = I},
// presented as Z^q + L with q = p.
struct StabilizerCenter {
  std::vector<std::size_t> f0;         // elements of F acting trivially
  std::vector<std::size_t> center;     // Z0 = finite parts of Z(S_A)
  FgAbelianGroup presentation;         // Z^q + L
  std::vector<CrystalElement> free_generators;
  std::vector<CrystalElement> torsion_generators;
  // Old generators g_h (h in Z0 minus 1) then e_1..e_p; SNF data for the
  // relation matrix and the unimodular rebase of the free part.
  IntMatrix relations, v, v_inv, free_rebase;
  std::vector<std::size_t> free_columns, torsion_columns;
  IntMatrix lattice_inclusion; // free coordinates of e_1..e_p as columns (Hermite form)

  bool contains(const CrystalElement& x) const { return std::binary_search(center.begin(), center.end(), x.f); }
};

namespace impl {

inline std::size_t center_index(const StabilizerCenter& z, std::size_t h) {
  auto it = std::lower_bound(z.center.begin(), z.center.end(), h);
  return static_cast<std::size_t>(it - z.center.begin());
}

} // namespace impl

// Coordinates of x in Z(S_A) under the stored presentation.
inline AbelianElement center_coordinates(const CrystalGroup& g, const StabilizerCenter& z, const CrystalElement& x) {
  if (!z.contains(x))
    throw InternalFault(g.describe(x) + " is not in Z(S_A)");
  const std::size_t m = z.center.size() - 1;
  IntVector old(m + g.rank(), Int(0));
  if (x.f != g.one()) {
    // Z0 minus the identity, in order.
    std::size_t idx = impl::center_index(z, x.f);
    std::size_t one_idx = impl::center_index(z, g.one());
    old[idx > one_idx ? idx - 1 : idx] = 1;
  }
  for (std::size_t i = 0; i < g.rank(); ++i)
    old[m + i] = x.lattice[i];
  IntVector y = z.v.transposed() * old; // y = x V as a column
  IntVector free;
  for (std::size_t c : z.free_columns)
    free.push_back(y[c]);
  free = z.free_rebase * free;
  std::vector<std::int64_t> tors;
  for (std::size_t k = 0; k < z.torsion_columns.size(); ++k)
    tors.push_back(mod_floor(y[z.torsion_columns[k]], Int(z.presentation.torsion_orders()[k])).convert_to<std::int64_t>());
  return make_element(z.presentation, free, tors);
}

inline StabilizerCenter stabilizer_center(const CrystalGroup& g) {
  StabilizerCenter z;
  const std::size_t p = g.rank();
  for (std::size_t h = 0; h < g.order(); ++h)
    if (g.action(h).is_identity())
      z.f0.push_back(h);
  for (std::size_t h : z.f0) {
    bool central = true;
    for (std::size_t k : z.f0)
      central = central && g.fmul(h, k) == g.fmul(k, h) && g.theta(h, k) == g.theta(k, h);
    if (central)
      z.center.push_back(h);
  }
  std::vector<std::size_t> gens; // Z0 minus the identity
  for (std::size_t h : z.center)
    if (h != g.one())
      gens.push_back(h);
  const std::size_t m = gens.size();
  auto gen_index = [&](std::size_t h) -> std::optional<std::size_t> {
    auto it = std::find(gens.begin(), gens.end(), h);
    if (it == gens.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - gens.begin());
  };

  // g_h + g_k - g_hk - theta(h, k) = 0.
  std::vector<IntVector> rows;
  for (std::size_t h : z.center)
    for (std::size_t k : z.center) {
      IntVector r(m + p, Int(0));
      if (auto i = gen_index(h))
        r[*i] += 1;
      if (auto i = gen_index(k))
        r[*i] += 1;
      if (auto i = gen_index(g.fmul(h, k)))
        r[*i] -= 1;
      const IntVector& th = g.theta(h, k);
      for (std::size_t j = 0; j < p; ++j)
        r[m + j] -= th[j];
      if (std::any_of(r.begin(), r.end(), [](const Int& v) { return v != 0; }))
        rows.push_back(std::move(r));
    }
  IntMatrix rel = rows.empty() ? IntMatrix(0, m + p) : IntMatrix::from_rows(rows);
  z.relations = rel;
  IntVector diag;
  if (rel.rows() > 0) {
    SmithForm s = smith_normal_form(rel);
    z.v = s.V;
    diag = s.diagonal();
  } else {
    z.v = IntMatrix::identity(m + p);
  }
  z.v_inv = inverse_unimodular(z.v);
  std::vector<std::int64_t> torsion;
  for (std::size_t c = 0; c < m + p; ++c) {
    Int d = c < diag.size() ? diag[c] : Int(0);
    if (d == 0)
      z.free_columns.push_back(c);
    else if (d > 1) {
      z.torsion_columns.push_back(c);
      torsion.push_back(d.convert_to<std::int64_t>());
    }
  }
  if (z.free_columns.size() != p)
    throw InternalFault("Z(S_A) has free rank " + std::to_string(z.free_columns.size()) + ", expected " +
                        std::to_string(p));

  // Rebase the free part so the lattice Z^p sits in Hermite form.
  z.free_rebase = IntMatrix::identity(p);
  z.presentation = FgAbelianGroup(p, torsion);
  IntMatrix inclusion(p, p);
  for (std::size_t j = 0; j < p; ++j) {
    AbelianElement c = center_coordinates(g, z, {g.one(), unit_vector(p, j)});
    for (std::size_t i = 0; i < p; ++i)
      inclusion(i, j) = c.lattice[i];
  }
  if (p > 0) {
    HermiteForm h = hermite_normal_form(inclusion);
    z.free_rebase = h.U;
    z.lattice_inclusion = h.H;
  } else {
    z.lattice_inclusion = inclusion;
  }

  // Generators: old coordinates x = y V^-1, element = sum x_j gen_j.
  auto element_of = [&](const IntVector& y) {
    IntVector x = z.v_inv.transposed() * y;
    CrystalElement e = g.identity();
    for (std::size_t j = 0; j < m; ++j)
      e = g.multiply(e, g.power({gens[j], zero_vector(p)}, x[j]));
    IntVector a(x.begin() + static_cast<std::ptrdiff_t>(m), x.end());
    return g.multiply(e, {g.one(), a});
  };
  IntMatrix rebase_inv = p > 0 ? inverse_unimodular(z.free_rebase) : z.free_rebase;
  for (std::size_t j = 0; j < p; ++j) {
    IntVector y(m + p, Int(0));
    for (std::size_t i = 0; i < p; ++i)
      y[z.free_columns[i]] = rebase_inv(i, j);
    z.free_generators.push_back(element_of(y));
  }
  for (std::size_t c : z.torsion_columns) {
    IntVector y(m + p, Int(0));
    y[c] = 1;
    z.torsion_generators.push_back(element_of(y));
  }
  return z;
}

// The matrix of gamma on Z(S_A) / L in the free basis of the presentation.
inline IntMatrix induced_rho(const CrystalGroup& g, const CrystalAutomorphism& gamma, const StabilizerCenter& z) {
  const std::size_t q = z.free_generators.size();
  IntMatrix rho(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    CrystalElement image = gamma.apply(z.free_generators[j]);
    if (!z.contains(image))
      throw InternalFault("automorphism moves " + g.describe(z.free_generators[j]) + " out of Z(S_A)");
    AbelianElement c = center_coordinates(g, z, image);
    for (std::size_t i = 0; i < q; ++i)
      rho(i, j) = c.lattice[i];
  }
  if (q > 0 && !is_unimodular(rho))
    throw InternalFault("induced matrix " + rho.str() + " is not unimodular");
  return rho;
}

inline IntMatrix induced_rho(const CrystalGroup& g, const CrystalAutomorphism& gamma) {
  return induced_rho(g, gamma, stabilizer_center(g));
}

inline EntropyEstimate crystal_entropy(const CrystalGroup& g, const CrystalAutomorphism& gamma, double tol = 1e-12) {
  StabilizerCenter z = stabilizer_center(g);
  IntMatrix rho = induced_rho(g, gamma, z);
  EntropyEstimate e = eigen_entropy(rho, tol);
  e.note = "crystal pipeline: rho = " + rho.str();
  e.extras["free_rank"] = static_cast<double>(z.free_generators.size());
  e.extras["center_torsion"] = static_cast<double>(z.presentation.torsion_size());
  return e;
}

// Entropy from an automorphism of a finite-index abelian subgroup Z^p + F:
// only the induced matrix on the lattice matters.
inline EntropyEstimate theorem64_entropy(const AbelianAutomorphism& sigma, double tol = 1e-12) {
  EntropyEstimate e = eigen_entropy(sigma.lattice_part(), tol);
  e.note = "finite-index abelian subgroup; torsion ignored";
  return e;
}

// Rank-search adapter: balls are F x {|a|_inf <= R}.
struct CrystalOps {
  using element_type = CrystalElement;
  CrystalGroup group;

  CrystalOps() = default;
  explicit CrystalOps(CrystalGroup g) : group(std::move(g)) {}

  element_type identity() const { return group.identity(); }
  element_type op(const element_type& a, const element_type& b) const { return group.multiply(a, b); }
  element_type inverse(const element_type& a) const { return group.inverse(a); }
  std::string describe(const element_type& a) const { return group.describe(a); }
  bool in_ball(const element_type& x, std::int64_t r) const {
    return std::all_of(x.lattice.begin(), x.lattice.end(), [&](const Int& v) { return abs(v) <= r; });
  }
  std::vector<element_type> ball(std::int64_t r) const {
    AbelianOps lattice(FgAbelianGroup(group.rank()));
    std::vector<element_type> out;
    for (std::size_t h = 0; h < group.order(); ++h)
      for (const AbelianElement& a : lattice.ball(r))
        out.push_back({h, a.lattice});
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<ElementMap<element_type>> symmetries() const { return {}; }
};

struct ExtensionBound {
  std::size_t lhs = 0;            // rank of omega at 2 delta on G
  std::size_t quotient_rank = 0;  // rank of pi(omega) at delta on F
  std::size_t kernel_rank = 0;    // rank of the conjugated set at delta on Z^p
  std::size_t rhs = 0;
  std::vector<IntVector> kernel_set;
  bool exhaustive = true;
  bool holds = false;
  std::string note;
};

// ra(omega, 2 delta) <= ra(pi(omega), delta) ra(K-set, delta) with all three
// ranks from the bounded search (so both sides are within-radius values).
inline ExtensionBound lemma511_bound_check(const CrystalGroup& g, const std::vector<CrystalElement>& omega, double delta,
                                           const RankSearchOptions& opt = {}) {
  if (omega.empty())
    throw Error("lemma511_bound_check: omega must be nonempty");
  for (const auto& s : omega)
    g.check(s);
  ExtensionBound b;
  const std::size_t p = g.rank();

  std::vector<std::size_t> pi;
  for (const auto& s : omega)
    pi.push_back(s.f);
  RankSearchOptions fopt = opt;
  fopt.radius = 0;
  fopt.max_support = g.order();
  auto quotient = min_rank_bruteforce(g.quotient(), pi, delta, fopt);
  b.quotient_rank = quotient.rank;
  const std::vector<std::size_t>& support = quotient.witness.support();

  // For s = (phi(h) k)^-1 and x in h^-1 supp(T): phi(x)^-1 k^-1 phi(x) theta(h, x)^-1.
  for (const auto& s : omega) {
    CrystalElement hk = g.inverse(s);
    for (std::size_t f : support) {
      std::size_t x = g.fmul(g.finv(hk.f), f);
      IntVector v = g.action(x) * (-hk.lattice) - g.theta(hk.f, x);
      if (std::find(b.kernel_set.begin(), b.kernel_set.end(), v) == b.kernel_set.end())
        b.kernel_set.push_back(v);
    }
  }
  FgAbelianGroup lattice(p);
  std::vector<AbelianElement> kset;
  for (const auto& v : b.kernel_set)
    kset.push_back(make_element(lattice, v));
  auto kernel = min_rank_bruteforce(AbelianOps(lattice), kset, delta, opt);
  b.kernel_rank = kernel.rank;
  b.rhs = b.quotient_rank * b.kernel_rank;

  auto whole = min_rank_bruteforce(CrystalOps(g), omega, 2 * delta, opt);
  b.lhs = whole.rank;
  b.exhaustive = quotient.exhaustive_within_radius && kernel.exhaustive_within_radius && whole.exhaustive_within_radius;
  b.holds = b.lhs <= b.rhs;
  bool trivial_action = true;
  for (std::size_t h = 0; h < g.order(); ++h)
    trivial_action = trivial_action && g.action(h).is_identity();
  b.note = trivial_action ? "within-radius ranks" : "upper-bound comparison: within-radius ranks on a nonabelian group";
  return b;
}

// Canned groups.

// Z by Z/2 acting by -1 (split): the infinite dihedral group.
inline CrystalGroup infinite_dihedral() {
  FiniteGroupOps f = cyclic_group(2);
  f.names = {"1", "flip"};
  return CrystalGroup(1, f, {IntMatrix{{1}}, IntMatrix{{-1}}});
}

// Z^2 x Z/2 with trivial action and cocycle.
inline CrystalGroup z2_times_c2() {
  return CrystalGroup(2, cyclic_group(2), {IntMatrix::identity(2), IntMatrix::identity(2)});
}

// Z^2 by Z/2 acting by -1: the wallpaper group p2.
inline CrystalGroup wallpaper_p2() {
  FiniteGroupOps f = cyclic_group(2);
  f.names = {"1", "r"};
  return CrystalGroup(2, f, {IntMatrix::identity(2), IntMatrix{{-1, 0}, {0, -1}}});
}

// Z^2 by Z/4 acting by a quarter turn: the wallpaper group p4.
inline CrystalGroup wallpaper_p4() {
  FiniteGroupOps f = cyclic_group(4);
  IntMatrix r{{0, 1}, {-1, 0}};
  return CrystalGroup(2, f, {IntMatrix::identity(2), r, power(r, 2), power(r, 3)});
}

// Glide reflection group pg (Klein bottle group): non-split, the glide
// squares to the translation e_1.
inline CrystalGroup wallpaper_pg() {
  FiniteGroupOps f = cyclic_group(2);
  f.names = {"1", "glide"};
  std::vector<std::vector<IntVector>> theta(2, std::vector<IntVector>(2, zero_vector(2)));
  theta[1][1] = {Int(1), Int(0)};
  return CrystalGroup(2, f, {IntMatrix::identity(2), IntMatrix{{1, 0}, {0, -1}}}, theta);
}

} // namespace dualent

#endif // DUALENT_CRYSTAL_HPP_
