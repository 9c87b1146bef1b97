#pragma once

// The degree -2 Poisson bracket on S(E[-1] ⊕ E*[-1]), the differential it
// induces, Maurer–Cartan elements, twisting and gauge action.

#include "htt/algebra.hpp"

#include <optional>
#include <vector>

namespace htt {

/// Sum over pairs (a_i, b_j) of pair(a_i, b_j) (a without a_i)(b without b_j).
/// a_i is moved to the end of a and b_j to the front of b first.
template <class Pair>
Element contract(const Element& a, const Element& b, const Pair& pair) {
  a.check_same(b);
  TablePtr tp = a.table ? a.table : b.table;
  Element out(tp);
  if (!tp) return out;
  const auto& t = *tp;
  for (const auto& [ma, qa] : a.terms)
    for (const auto& [mb, qb] : b.terms) {
      for (std::size_t i = 0; i < ma.size(); ++i) {
        // Parity of the factors after a_i.
        int after = 0;
        for (std::size_t k = i + 1; k < ma.size(); ++k) after += t.degree(ma[k]);
        int before = 0;  // parity of the factors of b preceding b_j
        for (std::size_t j = 0; j < mb.size(); before += t.degree(mb[j]), ++j) {
          Rational v = pair(ma[i], mb[j]);
          if (is_zero(v)) continue;
          int s = sign_of_parity(t.degree(ma[i]) * after + t.degree(mb[j]) * before);
          Monomial ra(ma), rb(mb);
          ra.erase(ra.begin() + static_cast<std::ptrdiff_t>(i));
          rb.erase(rb.begin() + static_cast<std::ptrdiff_t>(j));
          auto [s2, m] = multiply_monomials(t, ra, rb);
          if (s2 == 0) continue;
          out.add_term(m, s * s2 * v * qa * qb);
        }
      }
    }
  return out;
}

inline Element big_bracket(const Element& a, const Element& b) {
  if (!a.table && !b.table) return Element();
  const auto& t = a.table ? *a.table : *b.table;
  return contract(a, b, [&](std::uint32_t x, std::uint32_t y) { return pairing(t, x, y); });
}

/// Same expansion with <alpha, M(beta)> in place of the pairing (M = g∘f).
inline Element twisted_bracket(const Element& a, const Element& b, const GradedMap& m) {
  if (!a.table && !b.table) return Element();
  const auto& t = a.table ? *a.table : *b.table;
  return contract(a, b, [&](std::uint32_t x, std::uint32_t y) { return twisted_pairing(t, m, x, y); });
}

/// The element of biweight (1,1) whose bracket encodes d:
/// {dhat, xi^e} = xi^{d e} for every basis vector e.
inline Element differential_element(const TablePtr& t) {
  const auto& c = *t->complex();
  Element out(t);
  for (const auto& [deg, m] : c.d)
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t col = 0; col < m.cols(); ++col) {
        if (is_zero(m(r, col))) continue;
        const auto theta = t->id(Side::FromEDual, deg, col);
        const auto xi_src = t->id(Side::FromE, deg, col);
        const auto xi_tgt = t->id(Side::FromE, deg + 1, r);
        Element trial(t);
        trial.add_word({theta, xi_tgt}, 1);
        Element image = big_bracket(trial, generator_element(t, xi_src));
        const Rational k = image.terms.at(Monomial{xi_tgt});
        out += (m(r, col) / k) * trial;
      }
  return out;
}

/// A complex together with its differential element and an optional twist.
struct ShiftedLieContext {
  TablePtr table;
  Element dhat;
  std::optional<Element> twist;

  const std::shared_ptr<const Complex>& complex() const { return table->complex(); }

  /// dhat plus the twist, the element whose bracket is the differential.
  Element total() const { return twist ? dhat + *twist : dhat; }
};

inline ShiftedLieContext make_context(const std::shared_ptr<const Complex>& c) {
  auto t = make_table(c);
  return {t, differential_element(t), std::nullopt};
}

inline Element differential(const ShiftedLieContext& ctx, const Element& a) { return big_bracket(ctx.total(), a); }

inline void require_degree(const Element& a, int degree, const std::string& what) {
  auto d = a.degree();
  if (!a.is_zero() && (!d || *d != degree))
    throw std::invalid_argument(what + " must be homogeneous of degree " + std::to_string(degree));
}

/// d(nu) + 1/2 {nu, nu}; zero iff nu is Maurer–Cartan.
inline Element mc_residual(const ShiftedLieContext& ctx, const Element& nu) {
  require_degree(nu, 3, "Maurer-Cartan candidate");
  Element r = differential(ctx, nu);
  r += Rational(1, 2) * big_bracket(nu, nu);
  if (!r.table) r.table = ctx.table;
  return r;
}

inline bool is_mc(const ShiftedLieContext& ctx, const Element& nu) { return mc_residual(ctx, nu).is_zero(); }

/// Context with differential d + {mu, -}.
inline ShiftedLieContext twist_context(const ShiftedLieContext& ctx, const Element& mu) {
  if (!is_mc(ctx, mu)) throw std::invalid_argument("twisting element is not Maurer-Cartan");
  ShiftedLieContext out = ctx;
  if (mu.is_zero()) return out;
  out.twist = ctx.twist ? *ctx.twist + mu : mu;
  return out;
}

inline void require_left_weight_at_least(const Element& a, int k, const std::string& what) {
  for (const auto& w : a.biweights())
    if (w.first < k)
      throw std::invalid_argument(what + " has a component of biweight (" + std::to_string(w.first) + "," +
                                  std::to_string(w.second) + "); left weight must be at least " + std::to_string(k));
}

/// Polynomial in a formal variable t with element coefficients, lowest power first.
struct PolyElement {
  std::vector<Element> coeffs;

  Element at(std::size_t k, const TablePtr& t) const { return k < coeffs.size() ? coeffs[k] : Element(t); }
  void trim() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }
};

namespace detail {
// Upper bound on iterated brackets; only reached if nilpotence fails.
inline constexpr int kMaxGaugeOrder = 256;
}

/// The path m_t = e^{t ad_h} nu - ((e^{t ad_h} - 1)/ad_h)(dh) as a polynomial in t.
inline PolyElement gauge_path(const ShiftedLieContext& ctx, const Element& h, const Element& nu) {
  require_degree(h, 2, "gauge generator");
  require_left_weight_at_least(h, 2, "gauge generator");
  PolyElement p;
  Element a = nu;  // ad_h^k nu / k!
  if (!a.table) a.table = ctx.table;
  p.coeffs.push_back(a);
  Element b = differential(ctx, h);  // ad_h^{k-1} dh / k!
  if (!b.table) b.table = ctx.table;
  for (int k = 1;; ++k) {
    if (k > detail::kMaxGaugeOrder) throw std::runtime_error("gauge series did not terminate");
    a = Rational(1, k) * big_bracket(h, a);
    if (k > 1) b = Rational(1, k) * big_bracket(h, b);
    if (a.is_zero() && b.is_zero()) break;
    Element term = a - b;
    if (!term.table) term.table = ctx.table;
    p.coeffs.push_back(term);
  }
  p.trim();
  return p;
}

/// Value at t = 1 of the gauge path: the gauge transform of nu by h.
inline Element gauge_exp(const ShiftedLieContext& ctx, const Element& h, const Element& nu) {
  require_degree(nu, 3, "Maurer-Cartan element");
  PolyElement p = gauge_path(ctx, h, nu);
  Element out(ctx.table);
  for (const auto& c : p.coeffs) out += c;
  return out;
}

/// Checks that m_t is Maurer–Cartan for all t and that dm/dt + d h_t + {m_t, h_t} = 0.
inline CheckReport gauge_path_check(const ShiftedLieContext& ctx, const PolyElement& m, const PolyElement& h) {
  const auto& t = ctx.table;
  const std::size_t nm = m.coeffs.size(), nh = h.coeffs.size();
  for (std::size_t k = 0; k + 1 < 2 * std::max<std::size_t>(nm, 1); ++k) {
    Element r = differential(ctx, m.at(k, t));
    for (std::size_t i = 0; i <= k; ++i) r += Rational(1, 2) * big_bracket(m.at(i, t), m.at(k - i, t));
    if (!r.is_zero()) return CheckReport::fail("Maurer-Cartan equation fails at order t^" + std::to_string(k));
  }
  const std::size_t top = std::max(nm, nm + nh);
  for (std::size_t k = 0; k < top; ++k) {
    Element r = Rational(static_cast<long>(k + 1)) * m.at(k + 1, t);
    r += differential(ctx, h.at(k, t));
    for (std::size_t i = 0; i <= k; ++i) r += big_bracket(m.at(i, t), h.at(k - i, t));
    if (!r.is_zero()) return CheckReport::fail("flow equation fails at order t^" + std::to_string(k));
  }
  return CheckReport::pass();
}

/// Residual of the shifted Poisson equation for pi in a context already
/// twisted by an algebroid structure.
inline Element shifted_poisson_residual(const ShiftedLieContext& twisted, const Element& pi) {
  require_degree(pi, 3, "shifted Poisson candidate");
  for (const auto& w : pi.biweights())
    if (w.second < 2)
      throw std::invalid_argument("shifted Poisson candidate must have biweights (*, >=2)");
  return mc_residual(twisted, pi);
}

}  // namespace htt
