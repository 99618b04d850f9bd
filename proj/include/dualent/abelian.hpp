// Finitely generated abelian groups Z^p + Z/d_1 + ... + Z/d_k, their
// elements, and their automorphisms.

#ifndef DUALENT_ABELIAN_HPP_
#define DUALENT_ABELIAN_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "int_matrix.hpp"

namespace dualent {

class FgAbelianGroup {
public:
  FgAbelianGroup() = default;
  explicit FgAbelianGroup(std::size_t rank, std::vector<std::int64_t> torsion = {})
    : rank_(rank), torsion_(std::move(torsion)) {
    for (std::int64_t d : torsion_)
      if (d < 2)
        throw InvalidStructure("torsion orders must be >= 2, got " + std::to_string(d));
  }

  std::size_t rank() const { return rank_; }
  const std::vector<std::int64_t>& torsion_orders() const { return torsion_; }
  std::size_t torsion_count() const { return torsion_.size(); }

  // |F| for the torsion part F.
  std::size_t torsion_size() const {
    std::size_t s = 1;
    for (std::int64_t d : torsion_)
      s *= static_cast<std::size_t>(d);
    return s;
  }

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

  std::string str() const {
    std::string s = "Z^" + std::to_string(rank_);
    for (std::int64_t d : torsion_)
      s += " + Z/" + std::to_string(d);
    return s;
  }

private:
  std::size_t rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

// Torsion components are kept in [0, d_i) so equality is structural.
struct AbelianElement {
  IntVector lattice;
  std::vector<std::int64_t> torsion;

  friend bool operator==(const AbelianElement&, const AbelianElement&) = default;
  friend std::weak_ordering operator<=>(const AbelianElement& a, const AbelianElement& b) {
    if (std::weak_ordering c = a.lattice <=> b.lattice; c != 0)
      return c;
    return a.torsion <=> b.torsion;
  }

  std::string str() const {
    std::string s = vector_str(lattice);
    if (!torsion.empty()) {
      s += ";[";
      for (std::size_t i = 0; i < torsion.size(); ++i)
        s += (i ? "," : "") + std::to_string(torsion[i]);
      s += "]";
    }
    return s;
  }
};

inline void check_member(const FgAbelianGroup& g, const AbelianElement& x) {
  if (x.lattice.size() != g.rank() || x.torsion.size() != g.torsion_count())
    throw ShapeError("element " + x.str() + " does not belong to " + g.str());
  for (std::size_t i = 0; i < x.torsion.size(); ++i)
    if (x.torsion[i] < 0 || x.torsion[i] >= g.torsion_orders()[i])
      throw ShapeError("torsion component out of range in " + x.str());
}

inline AbelianElement make_element(const FgAbelianGroup& g, IntVector lattice,
                                   std::vector<std::int64_t> torsion = {}) {
  if (torsion.empty())
    torsion.assign(g.torsion_count(), 0);
  if (torsion.size() != g.torsion_count() || lattice.size() != g.rank())
    throw ShapeError("element shape does not match " + g.str());
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    std::int64_t d = g.torsion_orders()[i];
    torsion[i] = ((torsion[i] % d) + d) % d;
  }
  return {std::move(lattice), std::move(torsion)};
}

inline AbelianElement identity_element(const FgAbelianGroup& g) {
  return {zero_vector(g.rank()), std::vector<std::int64_t>(g.torsion_count(), 0)};
}

inline AbelianElement add(const FgAbelianGroup& g, const AbelianElement& a, const AbelianElement& b) {
  check_member(g, a);
  check_member(g, b);
  AbelianElement r{a.lattice + b.lattice, a.torsion};
  for (std::size_t i = 0; i < r.torsion.size(); ++i)
    r.torsion[i] = (r.torsion[i] + b.torsion[i]) % g.torsion_orders()[i];
  return r;
}

inline AbelianElement negate(const FgAbelianGroup& g, const AbelianElement& a) {
  check_member(g, a);
  AbelianElement r{-a.lattice, a.torsion};
  for (std::size_t i = 0; i < r.torsion.size(); ++i)
    r.torsion[i] = (g.torsion_orders()[i] - r.torsion[i]) % g.torsion_orders()[i];
  return r;
}

inline AbelianElement subtract(const FgAbelianGroup& g, const AbelianElement& a, const AbelianElement& b) {
  return add(g, a, negate(g, b));
}

// k * a for an arbitrary integer k.
inline AbelianElement multiple(const FgAbelianGroup& g, const AbelianElement& a, const Int& k) {
  check_member(g, a);
  AbelianElement r{a.lattice, a.torsion};
  for (Int& v : r.lattice)
    v *= k;
  for (std::size_t i = 0; i < r.torsion.size(); ++i) {
    Int d = g.torsion_orders()[i];
    r.torsion[i] = static_cast<std::int64_t>(mod_floor(Int(a.torsion[i]) * k, d));
  }
  return r;
}

// Mixed-radix index of a torsion tuple, and back.
inline std::size_t torsion_index(const FgAbelianGroup& g, const std::vector<std::int64_t>& t) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    idx = idx * static_cast<std::size_t>(g.torsion_orders()[i]) + static_cast<std::size_t>(t[i]);
  return idx;
}

inline std::vector<std::int64_t> torsion_from_index(const FgAbelianGroup& g, std::size_t idx) {
  std::vector<std::int64_t> t(g.torsion_count());
  for (std::size_t i = t.size(); i-- > 0;) {
    auto d = static_cast<std::size_t>(g.torsion_orders()[i]);
    t[i] = static_cast<std::int64_t>(idx % d);
    idx /= d;
  }
  return t;
}

// x -> (M x_lattice ; tau(x_torsion) + mixing(x_lattice)).
// tau is the homomorphism sending torsion generator j to torsion_images[j];
// mixing sends lattice basis vector j to mixing_images[j].
class AbelianAutomorphism {
public:
  AbelianAutomorphism() = default;

  AbelianAutomorphism(FgAbelianGroup group, IntMatrix lattice,
                      std::vector<std::vector<std::int64_t>> torsion_images = {},
                      std::vector<std::vector<std::int64_t>> mixing_images = {})
    : group_(std::move(group)), lattice_(std::move(lattice)),
      torsion_images_(std::move(torsion_images)), mixing_images_(std::move(mixing_images)) {
    const std::size_t p = group_.rank();
    const std::size_t k = group_.torsion_count();
    if (lattice_.rows() != p || lattice_.cols() != p)
      throw ShapeError("lattice part must be " + std::to_string(p) + "x" + std::to_string(p));
    if (torsion_images_.empty())
      for (std::size_t j = 0; j < k; ++j)
        torsion_images_.push_back(unit_torsion(j));
    if (mixing_images_.empty())
      mixing_images_.assign(p, std::vector<std::int64_t>(k, 0));
    if (torsion_images_.size() != k || mixing_images_.size() != p)
      throw ShapeError("torsion/mixing image count does not match " + group_.str());
    for (auto* images : {&torsion_images_, &mixing_images_})
      for (auto& t : *images)
        t = make_element(group_, zero_vector(p), t).torsion;
    validate();
  }

  static AbelianAutomorphism identity(const FgAbelianGroup& g) {
    return AbelianAutomorphism(g, IntMatrix::identity(g.rank()));
  }

  const FgAbelianGroup& group() const { return group_; }
  const IntMatrix& lattice_part() const { return lattice_; }
  const std::vector<std::vector<std::int64_t>>& torsion_images() const { return torsion_images_; }
  const std::vector<std::vector<std::int64_t>>& mixing_images() const { return mixing_images_; }

  AbelianElement apply(const AbelianElement& x) const {
    check_member(group_, x);
    return apply_unchecked(x);
  }

  friend bool operator==(const AbelianAutomorphism&, const AbelianAutomorphism&) = default;

private:
  std::vector<std::int64_t> unit_torsion(std::size_t j) const {
    std::vector<std::int64_t> t(group_.torsion_count(), 0);
    t[j] = 1;
    return t;
  }

  AbelianElement apply_unchecked(const AbelianElement& x) const {
    AbelianElement r = identity_element(group_);
    r.lattice = lattice_ * x.lattice;
    for (std::size_t j = 0; j < x.torsion.size(); ++j)
      r = add(group_, r, multiple(group_, {zero_vector(group_.rank()), torsion_images_[j]}, x.torsion[j]));
    for (std::size_t j = 0; j < x.lattice.size(); ++j)
      r = add(group_, r, multiple(group_, {zero_vector(group_.rank()), mixing_images_[j]}, x.lattice[j]));
    return r;
  }

  void validate() const {
    if (!is_unimodular(lattice_))
      throw InvalidStructure("lattice part " + lattice_.str() + " is not unimodular");
    // tau well defined: d_j * tau(e_j) == 0.
    for (std::size_t j = 0; j < group_.torsion_count(); ++j) {
      AbelianElement img{zero_vector(group_.rank()), torsion_images_[j]};
      if (multiple(group_, img, group_.torsion_orders()[j]) != identity_element(group_))
        throw InvalidStructure("torsion image of generator " + std::to_string(j) +
                               " has order not dividing " + std::to_string(group_.torsion_orders()[j]));
    }
    // Bijectivity of the torsion map, exhaustively.
    const std::size_t n = group_.torsion_size();
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      AbelianElement x{zero_vector(group_.rank()), torsion_from_index(group_, i)};
      std::size_t j = torsion_index(group_, apply_unchecked(x).torsion);
      if (hit[j])
        throw InvalidStructure("torsion part is not a bijection");
      hit[j] = true;
    }
    // Additivity on pairs of basis elements.
    std::vector<AbelianElement> basis;
    for (std::size_t i = 0; i < group_.rank(); ++i)
      basis.push_back({unit_vector(group_.rank(), i), std::vector<std::int64_t>(group_.torsion_count(), 0)});
    for (std::size_t j = 0; j < group_.torsion_count(); ++j)
      basis.push_back({zero_vector(group_.rank()), unit_torsion(j)});
    for (const auto& a : basis)
      for (const auto& b : basis)
        if (apply_unchecked(add(group_, a, b)) != add(group_, apply_unchecked(a), apply_unchecked(b)))
          throw InvalidStructure("map is not additive on basis pair " + a.str() + ", " + b.str());
  }

  FgAbelianGroup group_;
  IntMatrix lattice_;
  std::vector<std::vector<std::int64_t>> torsion_images_;
  std::vector<std::vector<std::int64_t>> mixing_images_;
};

inline AbelianElement apply_auto(const AbelianAutomorphism& g, const AbelianElement& x) { return g.apply(x); }

// compose(a, b)(x) == a(b(x)).
inline AbelianAutomorphism compose(const AbelianAutomorphism& a, const AbelianAutomorphism& b) {
  if (a.group() != b.group())
    throw ShapeError("compose: automorphisms of different groups");
  const FgAbelianGroup& g = a.group();
  std::vector<std::vector<std::int64_t>> tors, mix;
  for (std::size_t j = 0; j < g.torsion_count(); ++j) {
    std::vector<std::int64_t> t(g.torsion_count(), 0);
    t[j] = 1;
    tors.push_back(a.apply(b.apply({zero_vector(g.rank()), t})).torsion);
  }
  for (std::size_t j = 0; j < g.rank(); ++j)
    mix.push_back(a.apply(b.apply(make_element(g, unit_vector(g.rank(), j)))).torsion);
  return AbelianAutomorphism(g, a.lattice_part() * b.lattice_part(), std::move(tors), std::move(mix));
}

inline AbelianAutomorphism invert(const AbelianAutomorphism& a) {
  const FgAbelianGroup& g = a.group();
  IntMatrix inv = inverse_unimodular(a.lattice_part());
  // Invert the torsion bijection by table lookup.
  const std::size_t n = g.torsion_size();
  std::vector<std::size_t> back(n);
  for (std::size_t i = 0; i < n; ++i) {
    AbelianElement x{zero_vector(g.rank()), torsion_from_index(g, i)};
    back[torsion_index(g, a.apply(x).torsion)] = i;
  }
  auto tau_inverse = [&](const std::vector<std::int64_t>& t) {
    return torsion_from_index(g, back[torsion_index(g, t)]);
  };
  std::vector<std::vector<std::int64_t>> tors, mix;
  for (std::size_t j = 0; j < g.torsion_count(); ++j) {
    std::vector<std::int64_t> t(g.torsion_count(), 0);
    t[j] = 1;
    tors.push_back(tau_inverse(t));
  }
  // a(M^-1 e_j ; m) = e_j  =>  tau(m) = -mixing(M^-1 e_j).
  for (std::size_t j = 0; j < g.rank(); ++j) {
    AbelianElement pre = make_element(g, inv * unit_vector(g.rank(), j));
    AbelianElement image = a.apply(pre);
    mix.push_back(tau_inverse(negate(g, {zero_vector(g.rank()), image.torsion}).torsion));
  }
  return AbelianAutomorphism(g, std::move(inv), std::move(tors), std::move(mix));
}

inline AbelianAutomorphism power(const AbelianAutomorphism& a, long long k) {
  AbelianAutomorphism base = k < 0 ? invert(a) : a;
  AbelianAutomorphism r = AbelianAutomorphism::identity(a.group());
  for (long long i = 0; i < (k < 0 ? -k : k); ++i)
    r = compose(base, r);
  return r;
}

} // namespace dualent

#endif // DUALENT_ABELIAN_HPP_
