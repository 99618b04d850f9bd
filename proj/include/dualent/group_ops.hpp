// Group adapters used by the weighted-function and rank-search templates.
//
// An adapter provides element_type (totally ordered), identity(), op(a, b),
// inverse(a), a deterministic sorted ball(radius), in_ball(x, radius) and a
// list of extra automorphisms (symmetries) preserving every ball.

#ifndef DUALENT_GROUP_OPS_HPP_
#define DUALENT_GROUP_OPS_HPP_

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "abelian.hpp"

namespace dualent {

template <class G>
concept GroupOps = requires(const G& g, const typename G::element_type& a, std::int64_t r) {
  { g.identity() } -> std::convertible_to<typename G::element_type>;
  { g.op(a, a) } -> std::convertible_to<typename G::element_type>;
  { g.inverse(a) } -> std::convertible_to<typename G::element_type>;
  { g.ball(r) } -> std::convertible_to<std::vector<typename G::element_type>>;
  { g.in_ball(a, r) } -> std::convertible_to<bool>;
  { g.describe(a) } -> std::convertible_to<std::string>;
  { a < a } -> std::convertible_to<bool>;
};

template <class E>
using ElementMap = std::function<E(const E&)>;

// Z^p + F with the sup-norm ball on the lattice part (torsion unrestricted).
struct AbelianOps {
  using element_type = AbelianElement;
  FgAbelianGroup group;

  AbelianOps() = default;
  explicit AbelianOps(FgAbelianGroup g) : group(std::move(g)) {}

  element_type identity() const { return identity_element(group); }
  element_type op(const element_type& a, const element_type& b) const { return add(group, a, b); }
  element_type inverse(const element_type& a) const { return negate(group, a); }
  std::string describe(const element_type& a) const { return a.str(); }

  bool in_ball(const element_type& x, std::int64_t radius) const {
    for (const Int& v : x.lattice)
      if (abs(v) > radius)
        return false;
    return true;
  }

  std::vector<element_type> ball(std::int64_t radius) const {
    std::vector<element_type> out;
    const std::size_t p = group.rank();
    std::vector<std::int64_t> c(p, -radius);
    const std::size_t tsize = group.torsion_size();
    for (;;) {
      IntVector lat(c.begin(), c.end());
      for (std::size_t t = 0; t < tsize; ++t)
        out.push_back({lat, torsion_from_index(group, t)});
      std::size_t i = 0;
      while (i < p && c[i] == radius)
        c[i++] = -radius;
      if (i == p)
        break;
      ++c[i];
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Permutations of the lattice coordinates (identity excluded).
  std::vector<ElementMap<element_type>> symmetries() const {
    std::vector<ElementMap<element_type>> out;
    std::vector<std::size_t> perm(group.rank());
    for (std::size_t i = 0; i < perm.size(); ++i)
      perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
      out.push_back([perm](const element_type& x) {
        element_type y = x;
        for (std::size_t i = 0; i < perm.size(); ++i)
          y.lattice[perm[i]] = x.lattice[i];
        return y;
      });
    }
    return out;
  }
};

// A finite group given by its multiplication table over indices 0..n-1.
struct FiniteGroupOps {
  using element_type = std::size_t;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::string> names;
  std::size_t identity_index = 0;

  element_type identity() const { return identity_index; }
  element_type op(element_type a, element_type b) const { return table[a][b]; }
  element_type inverse(element_type a) const {
    for (std::size_t b = 0; b < table.size(); ++b)
      if (table[a][b] == identity_index)
        return b;
    throw InvalidStructure("element without inverse in multiplication table");
  }
  std::string describe(element_type a) const { return a < names.size() ? names[a] : std::to_string(a); }
  bool in_ball(element_type, std::int64_t) const { return true; }
  std::vector<element_type> ball(std::int64_t) const {
    std::vector<element_type> out(table.size());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = i;
    return out;
  }
  std::vector<ElementMap<element_type>> symmetries() const { return {}; }
};

} // namespace dualent

#endif // DUALENT_GROUP_OPS_HPP_
