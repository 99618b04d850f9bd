// Sumset growth |E + g(E) + ... + g^{n-1}(E)| and the entropy rate it
// determines for automorphisms of finitely generated abelian groups.

#ifndef DUALENT_PETERS_HPP_
#define DUALENT_PETERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "spectral.hpp"

namespace dualent {

inline constexpr std::size_t default_sumset_cap = 5'000'000;

namespace impl {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error("sumset coordinate overflows 64 bits");
  return r;
}

inline std::int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error("sumset coordinate " + v.str() + " overflows 64 bits");
  return v.convert_to<std::int64_t>();
}

inline std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

} // namespace impl

// Deduplicated finite subset of an FgAbelianGroup.  Elements are stored as
// flat 64-bit coordinate rows (lattice then torsion), which is their
// canonical encoding for hashing; an open-addressing table indexes the rows.
class FiniteSubset {
public:
  explicit FiniteSubset(FgAbelianGroup group) : group_(std::move(group)), width_(group_.rank() + group_.torsion_count()) {
    slots_.assign(16, empty_slot);
  }
  FiniteSubset(FgAbelianGroup group, const std::vector<AbelianElement>& elements) : FiniteSubset(std::move(group)) {
    for (const AbelianElement& e : elements)
      insert(e);
  }

  const FgAbelianGroup& group() const { return group_; }
  std::size_t size() const { return width_ ? coords_.size() / width_ : zero_width_count_; }
  bool empty() const { return size() == 0; }

  bool insert(const AbelianElement& e) {
    check_member(group_, e);
    std::vector<std::int64_t> row;
    row.reserve(width_);
    for (const Int& v : e.lattice)
      row.push_back(impl::to_int64(v));
    row.insert(row.end(), e.torsion.begin(), e.torsion.end());
    return insert_row(row.data());
  }

  bool contains(const AbelianElement& e) const {
    check_member(group_, e);
    std::vector<std::int64_t> row;
    for (const Int& v : e.lattice)
      row.push_back(impl::to_int64(v));
    row.insert(row.end(), e.torsion.begin(), e.torsion.end());
    return find(row.data()) != empty_slot;
  }

  AbelianElement element(std::size_t i) const {
    AbelianElement e;
    const std::int64_t* r = row(i);
    for (std::size_t j = 0; j < group_.rank(); ++j)
      e.lattice.emplace_back(r[j]);
    e.torsion.assign(r + group_.rank(), r + width_);
    return e;
  }

  // Elements in increasing (lattice, torsion) order.
  std::vector<AbelianElement> elements() const {
    std::vector<AbelianElement> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
      out.push_back(element(i));
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    if (a.group_ != b.group_ || a.size() != b.size())
      return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (b.find(a.row(i)) == empty_slot)
        return false;
    return true;
  }

  friend FiniteSubset sumset(const FiniteSubset& x, const FiniteSubset& y, std::size_t cap);

private:
  static constexpr std::uint32_t empty_slot = std::numeric_limits<std::uint32_t>::max();

  const std::int64_t* row(std::size_t i) const { return coords_.data() + i * width_; }

  std::uint64_t hash_row(const std::int64_t* r) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::size_t j = 0; j < width_; ++j)
      h = impl::mix(h ^ static_cast<std::uint64_t>(r[j]));
    return h;
  }

  std::uint32_t find(const std::int64_t* r) const {
    if (width_ == 0)
      return zero_width_count_ ? 0 : empty_slot;
    std::size_t mask = slots_.size() - 1;
    for (std::size_t s = hash_row(r) & mask;; s = (s + 1) & mask) {
      std::uint32_t idx = slots_[s];
      if (idx == empty_slot)
        return empty_slot;
      if (std::equal(r, r + width_, row(idx)))
        return idx;
    }
  }

  bool insert_row(const std::int64_t* r) {
    if (width_ == 0) { // trivial group
      bool fresh = zero_width_count_ == 0;
      zero_width_count_ = 1;
      return fresh;
    }
    if (find(r) != empty_slot)
      return false;
    if ((size() + 1) * 2 > slots_.size())
      grow();
    auto idx = static_cast<std::uint32_t>(size());
    coords_.insert(coords_.end(), r, r + width_);
    place(idx);
    return true;
  }

  void place(std::uint32_t idx) {
    std::size_t mask = slots_.size() - 1;
    std::size_t s = hash_row(row(idx)) & mask;
    while (slots_[s] != empty_slot)
      s = (s + 1) & mask;
    slots_[s] = idx;
  }

  void grow() {
    slots_.assign(slots_.size() * 2, empty_slot);
    for (std::size_t i = 0; i < size(); ++i)
      place(static_cast<std::uint32_t>(i));
  }

  FgAbelianGroup group_;
  std::size_t width_;
  std::size_t zero_width_count_ = 0;
  std::vector<std::int64_t> coords_;
  std::vector<std::uint32_t> slots_;
};

// {x + y : x in X, y in Y}.  Throws CapExceeded once the result holds more
// than cap elements; the exception carries the size reached so far.
inline FiniteSubset sumset(const FiniteSubset& x, const FiniteSubset& y, std::size_t cap = default_sumset_cap) {
  if (x.group() != y.group())
    throw ShapeError("sumset of subsets of different groups");
  const FgAbelianGroup& g = x.group();
  const std::size_t p = g.rank();
  FiniteSubset out(g);
  if (x.width_ == 0) {
    if (!x.empty() && !y.empty())
      out.insert_row(nullptr);
    return out;
  }
  std::vector<std::int64_t> buf(x.width_);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::int64_t* a = x.row(i);
    for (std::size_t j = 0; j < y.size(); ++j) {
      const std::int64_t* b = y.row(j);
      for (std::size_t c = 0; c < p; ++c)
        buf[c] = impl::checked_add(a[c], b[c]);
      for (std::size_t c = p; c < x.width_; ++c)
        buf[c] = (a[c] + b[c]) % g.torsion_orders()[c - p];
      out.insert_row(buf.data());
      if (out.size() > cap)
        throw CapExceeded("sumset exceeded cap of " + std::to_string(cap) + " elements", out.size());
    }
  }
  return out;
}

inline FiniteSubset image(const AbelianAutomorphism& gamma, const FiniteSubset& x) {
  FiniteSubset out(x.group());
  for (std::size_t i = 0; i < x.size(); ++i)
    out.insert(gamma.apply(x.element(i)));
  return out;
}

struct GrowthSeries {
  std::vector<std::size_t> sizes; // sizes[n-1] = s_n
  bool capped = false;
  bool zero_adjoined = false;     // 0 was added to E before iterating
  std::size_t cap = default_sumset_cap;
  std::size_t cap_lower_bound = 0; // size reached by the aborted step, if capped

  // s_{n+m} <= s_n * s_m on every computed pair.
  bool submultiplicative() const {
    for (std::size_t n = 1; n <= sizes.size(); ++n)
      for (std::size_t m = 1; n + m <= sizes.size(); ++m)
        if (sizes[n + m - 1] > sizes[n - 1] * sizes[m - 1])
          return false;
    return true;
  }
};

// s_n = |E + g(E) + ... + g^{n-1}(E)| for n = 1..N, built as
// S_n = S_{n-1} + g^{n-1}(E).  Stops early (capped) when the budget runs out.
inline GrowthSeries peters_growth(const AbelianAutomorphism& gamma, FiniteSubset e, std::size_t n_max,
                                  std::size_t cap = default_sumset_cap) {
  if (n_max < 1)
    throw Error("peters_growth: N must be >= 1");
  if (cap == 0)
    throw Error("peters_growth: cap must be positive");
  if (e.group() != gamma.group())
    throw ShapeError("peters_growth: set and automorphism live on different groups");
  GrowthSeries series;
  series.cap = cap;
  series.zero_adjoined = e.insert(identity_element(e.group()));
  FiniteSubset s = e;
  FiniteSubset power_image = e;
  series.sizes.push_back(s.size());
  for (std::size_t n = 2; n <= n_max; ++n) {
    power_image = image(gamma, power_image);
    try {
      s = sumset(s, power_image, cap);
    } catch (const CapExceeded& c) {
      series.capped = true;
      series.cap_lower_bound = c.size_lower_bound;
      break;
    }
    series.sizes.push_back(s.size());
  }
  return series;
}

struct GrowthRate {
  double average = 0;   // log(s_N) / N
  double tail = 0;      // log(s_N / s_{N-k}) / k
  std::size_t k = 3;
  EntropyEstimate estimate;
};

// Tail-difference rate; s_0 = 1 (the empty sum is {0}).
inline GrowthRate growth_rate_estimate(const GrowthSeries& series, std::size_t k = 3) {
  const std::size_t n = series.sizes.size();
  if (n < 3)
    throw Error("growth_rate_estimate: need at least 3 terms, got " + std::to_string(n));
  if (k < 1 || k > n)
    throw Error("growth_rate_estimate: tail window must lie in [1, N]");
  auto s = [&](std::size_t i) { return i == 0 ? 1.0 : static_cast<double>(series.sizes[i - 1]); };
  GrowthRate r;
  r.k = k;
  r.average = std::log(s(n)) / static_cast<double>(n);
  r.tail = std::log(s(n) / s(n - k)) / static_cast<double>(k);
  r.estimate.value = std::max(0.0, r.tail);
  r.estimate.method = Method::peters;
  for (std::size_t sz : series.sizes)
    r.estimate.series.push_back(static_cast<double>(sz));
  r.estimate.extras["average_rate"] = r.average;
  r.estimate.extras["tail_rate"] = r.tail;
  r.estimate.extras["tail_window"] = static_cast<double>(k);
  r.estimate.extras["terms"] = static_cast<double>(n);
  r.estimate.extras["capped"] = series.capped ? 1.0 : 0.0;
  r.estimate.note = series.zero_adjoined ? "0 adjoined to E" : "";
  return r;
}

} // namespace dualent

#endif // DUALENT_PETERS_HPP_
