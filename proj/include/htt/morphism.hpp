#pragma once

// The L∞ morphism of a homotopy equivalence: U_1 extends f ⊕ g* as an
// algebra map, U_n = U_1 ∘ R_n for n >= 2.

#include "htt/trees.hpp"

#include <map>

namespace htt {

struct LinftyMorphism {
  ShiftedLieContext source;  // over E
  ShiftedLieContext target;  // over F
  GradedMap f;               // E -> F
  GradedMap g;               // F -> E
  GradedMap homotopy;        // H_E
  std::map<int, Rational> scale;  // optional extra factor per arity (1 if absent)

  Rational factor(int n) const {
    auto it = scale.find(n);
    return it == scale.end() ? Rational(1) : it->second;
  }
};

inline LinftyMorphism morphism_from_equivalence(const HomotopyEquivalence& h) {
  return {make_context(h.E), make_context(h.F), h.f, h.g, h.H_E, {}};
}

inline LinftyMorphism identity_morphism(const std::shared_ptr<const Complex>& c) {
  auto ctx = make_context(c);
  return {ctx, ctx, identity_map(c), identity_map(c), zero_map(c, c, -1), {}};
}

/// Image of a single generator of the source under U_1.
inline Element u1_generator(const LinftyMorphism& u, std::uint32_t id) {
  const auto& s = *u.source.table;
  const auto& tt = u.target.table;
  const auto& gen = s[id];
  Element out(tt);
  const int deg = gen.base_degree;
  if (gen.side == Side::FromE) {
    const Matrix m = u.f.block(deg);  // F_deg x E_deg
    for (std::size_t b = 0; b < m.rows(); ++b) out.add_term({tt->id(Side::FromE, deg, b)}, m(b, gen.base_index));
  } else {
    const Matrix m = u.g.block(deg);  // E_deg x F_deg
    for (std::size_t b = 0; b < m.cols(); ++b) out.add_term({tt->id(Side::FromEDual, deg, b)}, m(gen.base_index, b));
  }
  return out;
}

inline Element apply_u1(const LinftyMorphism& u, const Element& x) {
  std::map<std::uint32_t, Element> cache;
  Element out(u.target.table);
  for (const auto& [m, q] : x.terms) {
    Element acc = scalar(u.target.table, q);
    for (auto id : m) {
      auto it = cache.find(id);
      if (it == cache.end()) it = cache.emplace(id, u1_generator(u, id)).first;
      acc = product(acc, it->second);
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

/// U_n(x_1, ..., x_n).
inline Element apply_u(const LinftyMorphism& u, const std::vector<Element>& xs) {
  const int n = static_cast<int>(xs.size());
  Element r = n == 1 ? xs[0] : tree_sum(u.homotopy, xs);
  if (!r.table) r.table = u.source.table;
  return u.factor(n) * apply_u1(u, r);
}

/// Largest arity contributing to pushforwards of biweight (*,1) elements:
/// inputs of left weight >= 2 give outputs of left weight >= n+1, and the
/// left weight of a degree-3 element is at most 2 - (lowest degree of E).
inline int pushforward_arity_bound(const Complex& e) {
  const auto degs = e.degrees();
  const int lo = degs.empty() ? 0 : std::min(0, degs.front());
  return std::max(1, 1 - lo);
}

/// U(nu) = sum_n 1/n! U_n(nu, ..., nu) for nu of left weight >= 2.
///
/// With right weight 1 throughout the series stops at the arity bound above;
/// otherwise `max_arity` caps it and the result is exact only if the series
/// has terminated, which is checked.
inline Element push_mc(const LinftyMorphism& u, const Element& nu, std::optional<int> max_arity = std::nullopt) {
  require_degree(nu, 3, "Maurer-Cartan element");
  require_left_weight_at_least(nu, 2, "pushed-forward element");
  Element out(u.target.table);
  if (nu.is_zero()) return out;
  bool right_weight_one = true;
  for (const auto& w : nu.biweights()) right_weight_one = right_weight_one && w.second == 1;
  const int cap = max_arity ? *max_arity : (right_weight_one ? pushforward_arity_bound(*u.source.complex()) : 8);
  Rational fact = 1;
  for (int n = 1; n <= cap; ++n) {
    fact *= n;
    out += (1 / fact) * apply_u(u, std::vector<Element>(static_cast<std::size_t>(n), nu));
  }
  if (!right_weight_one && !max_arity) {
    // Confirm the series has terminated.
    Element next = apply_u(u, std::vector<Element>(static_cast<std::size_t>(cap + 1), nu));
    if (!next.is_zero()) throw std::runtime_error("push_mc: series does not terminate below the arity cap");
  }
  return out;
}

}  // namespace htt
