// Finitely supported probability functions on a group, their translation
// defect max_s ||s.T - T||_1 (s.T(g) = T(s^-1 g)), and the square-root
// overlap inequality |1 - sum_g sqrt(T(g) T(h^-1 g))|^2 <= ||h.T - T||_1.

#ifndef DUALENT_WEIGHTED_HPP_
#define DUALENT_WEIGHTED_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "group_ops.hpp"

namespace dualent {

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

template <GroupOps G>
class Weighted {
public:
  using element_type = typename G::element_type;
  static constexpr double float_sum_tolerance = 1e-12;

  Weighted() = default;

  // Exact weights; support is sorted, must be duplicate-free and weights > 0
  // summing to exactly 1.
  Weighted(G ops, std::vector<element_type> support, std::vector<Rational> weights)
    : ops_(std::move(ops)) {
    if (support.size() != weights.size())
      throw ShapeError("support and weight lists differ in length");
    std::vector<std::size_t> order = sorted_order(support);
    Rational total = 0;
    for (std::size_t i : order) {
      if (weights[i] <= 0)
        throw InvalidStructure("weight at " + ops_.describe(support[i]) + " is not positive");
      total += weights[i];
      support_.push_back(support[i]);
      exact_.push_back(weights[i]);
      weights_.push_back(to_double(weights[i]));
    }
    if (total != 1)
      throw InvalidStructure("weights sum to " + total.str() + ", not 1");
    check_distinct();
  }

  // Floating-point weights (flagged inexact); sum within 1e-12 of 1.
  Weighted(G ops, std::vector<element_type> support, std::vector<double> weights)
    : ops_(std::move(ops)) {
    if (support.size() != weights.size())
      throw ShapeError("support and weight lists differ in length");
    std::vector<std::size_t> order = sorted_order(support);
    double total = 0;
    for (std::size_t i : order) {
      if (!(weights[i] > 0))
        throw InvalidStructure("weight at " + ops_.describe(support[i]) + " is not positive");
      total += weights[i];
      support_.push_back(support[i]);
      weights_.push_back(weights[i]);
    }
    if (std::fabs(total - 1) > float_sum_tolerance)
      throw InvalidStructure("weights sum to " + std::to_string(total) + ", not 1");
    check_distinct();
  }

  static Weighted uniform(G ops, std::vector<element_type> support) {
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end(), [](const auto& a, const auto& b) {
      return !(a < b) && !(b < a);
    }), support.end());
    if (support.empty())
      throw InvalidStructure("uniform function on an empty set");
    std::vector<Rational> w(support.size(), Rational(1, static_cast<long long>(support.size())));
    return Weighted(std::move(ops), std::move(support), std::move(w));
  }

  static Weighted point_mass(G ops, element_type at) {
    return Weighted(std::move(ops), {std::move(at)}, std::vector<Rational>{Rational(1)});
  }

  const G& ops() const { return ops_; }
  const std::vector<element_type>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_exact() const { return !exact_.empty() || support_.empty(); }
  const std::vector<Rational>& exact_weights() const { return exact_; }
  std::size_t size() const { return support_.size(); }

  double weight_at(const element_type& x) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), x);
    if (it == support_.end() || x < *it)
      return 0;
    return weights_[static_cast<std::size_t>(it - support_.begin())];
  }
  Rational exact_weight_at(const element_type& x) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), x);
    if (it == support_.end() || x < *it)
      return 0;
    return exact_[static_cast<std::size_t>(it - support_.begin())];
  }

private:
  std::vector<std::size_t> sorted_order(const std::vector<element_type>& support) const {
    std::vector<std::size_t> order(support.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    return order;
  }
  void check_distinct() const {
    for (std::size_t i = 1; i < support_.size(); ++i)
      if (!(support_[i - 1] < support_[i]))
        throw InvalidStructure("duplicate support element " + ops_.describe(support_[i]));
  }

  G ops_;
  std::vector<element_type> support_;
  std::vector<double> weights_;
  std::vector<Rational> exact_;
};

using WeightedFunction = Weighted<AbelianOps>;

// ||s.T - T||_1 = sum over g in supp(T) u s.supp(T) of |T(s^-1 g) - T(g)|.
template <GroupOps G>
double translation_defect(const Weighted<G>& t, const typename G::element_type& s) {
  const G& ops = t.ops();
  auto s_inv = ops.inverse(s);
  double sum = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& g = t.support()[i];
    sum += std::fabs(t.weight_at(ops.op(s_inv, g)) - t.weights()[i]);
    // g' = s g outside the support contributes T(g) on its own.
    if (t.weight_at(ops.op(s, g)) == 0)
      sum += t.weights()[i];
  }
  return sum;
}

template <GroupOps G>
Rational exact_translation_defect(const Weighted<G>& t, const typename G::element_type& s) {
  if (!t.is_exact())
    throw Error("exact defect requested for a floating-point function");
  const G& ops = t.ops();
  auto s_inv = ops.inverse(s);
  Rational sum = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto& g = t.support()[i];
    Rational d = t.exact_weight_at(ops.op(s_inv, g)) - t.exact_weights()[i];
    sum += d < 0 ? Rational(-d) : d;
    if (t.exact_weight_at(ops.op(s, g)) == 0)
      sum += t.exact_weights()[i];
  }
  return sum;
}

// max over s in omega of ||s.T - T||_1.
template <GroupOps G>
double defect(const Weighted<G>& t, const std::vector<typename G::element_type>& omega) {
  if (omega.empty())
    throw Error("defect: omega must be nonempty");
  double worst = 0;
  for (const auto& s : omega)
    worst = std::max(worst, translation_defect(t, s));
  return worst;
}

template <GroupOps G>
Rational exact_defect(const Weighted<G>& t, const std::vector<typename G::element_type>& omega) {
  if (omega.empty())
    throw Error("defect: omega must be nonempty");
  Rational worst = 0;
  for (const auto& s : omega)
    worst = std::max(worst, exact_translation_defect(t, s));
  return worst;
}

struct OverlapCheck {
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};

// lhs = |1 - sum_g sqrt(T(g) T(h^-1 g))|^2, rhs = ||h.T - T||_1.
template <GroupOps G>
OverlapCheck lemma31_check(const Weighted<G>& t, const typename G::element_type& h) {
  const G& ops = t.ops();
  auto h_inv = ops.inverse(h);
  long double overlap = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double other = t.weight_at(ops.op(h_inv, t.support()[i]));
    if (other > 0)
      overlap += std::sqrt(static_cast<long double>(t.weights()[i]) * other);
  }
  OverlapCheck c;
  long double gap = 1 - overlap;
  c.lhs = static_cast<double>(gap * gap);
  c.rhs = translation_defect(t, h);
  c.holds = c.lhs <= c.rhs + 1e-12;
  return c;
}

} // namespace dualent

#endif // DUALENT_WEIGHTED_HPP_
