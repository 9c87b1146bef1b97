#pragma once

// Elements with coefficients in an exterior-type algebra of formal parameters
// t_1..t_n (each used at most once, of prescribed parity). Multilinear
// identities are checked by substituting nu = sum t_i x_i into an identity
// that holds for all degree-3 elements and reading off the coefficient of
// t_1 ... t_n; every sign then follows from the Koszul rule alone.

#include "htt/bracket.hpp"

#include <functional>
#include <map>
#include <vector>

namespace htt {

struct ParamElement {
  TablePtr table;
  std::vector<int> parity;               // parity of t_i
  std::map<std::uint32_t, Element> terms;  // mask S -> a_S, meaning t_S a_S

  int mask_parity(std::uint32_t s) const {
    int p = 0;
    for (std::size_t i = 0; i < parity.size(); ++i)
      if (s >> i & 1) p += parity[i];
    return p & 1;
  }

  void add(std::uint32_t s, const Element& a) {
    if (a.is_zero()) return;
    auto [it, inserted] = terms.emplace(s, a);
    if (!inserted) {
      it->second += a;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  ParamElement& operator+=(const ParamElement& o) {
    for (const auto& [s, a] : o.terms) add(s, a);
    return *this;
  }

  ParamElement scaled(const Rational& q) const {
    ParamElement r{table, parity, {}};
    for (const auto& [s, a] : terms) r.add(s, q * a);
    return r;
  }

  Element coefficient(std::uint32_t s) const {
    auto it = terms.find(s);
    return it == terms.end() ? Element(table) : it->second;
  }
};

namespace detail {

/// t_S t_T = sign t_{S ∪ T}; 0 if S and T overlap.
inline int merge_sign(const std::vector<int>& parity, std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  int sign = 1;
  for (std::size_t i = 0; i < parity.size(); ++i) {
    if (!(s >> i & 1) || !parity[i]) continue;
    for (std::size_t j = 0; j < i; ++j)
      if ((t >> j & 1) && parity[j]) sign = -sign;
  }
  return sign;
}

/// Splits an element into homogeneous pieces by degree.
inline std::map<int, Element> by_degree(const Element& a) {
  std::map<int, Element> out;
  for (const auto& [m, q] : a.terms) {
    auto [it, _] = out.try_emplace(monomial_degree(*a.table, m), Element(a.table));
    it->second.terms.emplace(m, q);
  }
  return out;
}

}  // namespace detail

/// sum_i t_i x_i with t_i of parity |x_i| + 1, so that each summand is odd.
inline ParamElement generic_odd_combination(const std::vector<Element>& xs, const TablePtr& t) {
  ParamElement nu{t, {}, {}};
  for (const auto& x : xs) {
    auto d = x.degree();
    if (!d) throw std::invalid_argument("polarization needs homogeneous inputs");
    nu.parity.push_back(parity(*d + 1));
  }
  for (std::size_t i = 0; i < xs.size(); ++i) nu.add(std::uint32_t{1} << i, xs[i]);
  return nu;
}

/// Applies an operator of the given parity: op(t_S a) = (-1)^{|op||t_S|} t_S op(a).
inline ParamElement apply_linear(const ParamElement& x, int op_parity, const TablePtr& target,
                                 const std::function<Element(const Element&)>& op) {
  ParamElement r{target, x.parity, {}};
  for (const auto& [s, a] : x.terms) {
    const int sign = sign_of_parity(op_parity * x.mask_parity(s));
    r.add(s, Rational(sign) * op(a));
  }
  return r;
}

/// Applies a multilinear operator of the given parity to parameter elements,
/// pulling the parameters to the left with their Koszul signs. Only terms with
/// pairwise disjoint parameter sets survive; `full` restricts to outputs
/// inside that mask.
inline ParamElement apply_multilinear(const std::vector<ParamElement>& xs, int op_parity, const TablePtr& target,
                                      const std::function<Element(const std::vector<Element>&)>& op,
                                      std::uint32_t full) {
  const auto& par = xs.front().parity;
  ParamElement r{target, par, {}};
  std::vector<Element> args(xs.size());
  std::function<void(std::size_t, std::uint32_t, int, int)> rec = [&](std::size_t k, std::uint32_t used, int sign,
                                                                       int deg_before) {
    if (k == xs.size()) {
      Element v = op(args);
      if (!v.is_zero()) r.add(used, Rational(sign) * v);
      return;
    }
    for (const auto& [s, a] : xs[k].terms) {
      if ((s & used) || (s & ~full)) continue;
      const int ps = xs[k].mask_parity(s);
      const int ms = detail::merge_sign(par, used, s);
      for (const auto& [deg, piece] : detail::by_degree(a)) {
        args[k] = piece;
        const int sg = sign * ms * sign_of_parity(ps * (op_parity + deg_before));
        rec(k + 1, used | s, sg, deg_before + deg);
      }
    }
  };
  rec(0, 0, 1, 0);
  return r;
}

/// An L∞ morphism between dg Lie algebras with bracket of degree -2, given by
/// its components; `arity_parity(n)` is the parity of U_n.
struct MorphismEquation {
  TablePtr source, target;
  std::function<Element(const Element&)> d_source, d_target;
  std::function<Element(const Element&, const Element&)> bracket_source, bracket_target;
  std::function<Element(const std::vector<Element>&)> u;  // U_n on n arguments
};

/// Coefficient of t_1...t_n in
///   d U(nu) + 1/2 [U(nu), U(nu)] - sum_k 1/(k-1)! U_k(nu, ..., nu, curv(nu))
/// for nu = sum t_i x_i, U(nu) = sum_k 1/k! U_k(nu, ..., nu). Zero for all
/// inputs iff the n-th morphism equation holds.
inline Element morphism_defect(const MorphismEquation& eq, const std::vector<Element>& xs) {
  const std::size_t n = xs.size();
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  ParamElement nu = generic_odd_combination(xs, eq.source);
  auto u_parity = [](std::size_t k) { return static_cast<int>((k - 1) & 1); };

  ParamElement unu{eq.target, nu.parity, {}};
  Rational fact = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    fact *= static_cast<long>(k);
    std::vector<ParamElement> args(k, nu);
    unu += apply_multilinear(args, u_parity(k), eq.target, eq.u, full).scaled(1 / fact);
  }
  ParamElement lhs = apply_linear(unu, 1, eq.target, eq.d_target);
  auto bt = [&](const std::vector<Element>& a) { return eq.bracket_target(a[0], a[1]); };
  lhs += apply_multilinear({unu, unu}, 0, eq.target, bt, full).scaled(Rational(1, 2));

  ParamElement curv = apply_linear(nu, 1, eq.source, eq.d_source);
  auto bs = [&](const std::vector<Element>& a) { return eq.bracket_source(a[0], a[1]); };
  curv += apply_multilinear({nu, nu}, 0, eq.source, bs, full).scaled(Rational(1, 2));

  ParamElement rhs{eq.target, nu.parity, {}};
  fact = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) fact *= static_cast<long>(k - 1);
    std::vector<ParamElement> args(k, nu);
    args[k - 1] = curv;
    rhs += apply_multilinear(args, u_parity(k), eq.target, eq.u, full).scaled(1 / fact);
  }
  Element out = lhs.coefficient(full) - rhs.coefficient(full);
  if (!out.table) out.table = eq.target;
  return out;
}

}  // namespace htt
