#pragma once

// Applications of the tree-sum morphism: transfer of L∞ structures along
// homotopy equivalences, minimal models, the obstruction class of l_3, and
// higher derived brackets on the biweight (*,0) part.

#include "htt/morphism.hpp"
#include "htt/retract.hpp"
#include "htt/structure.hpp"
#include "htt/verify.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace htt {

/// decode(U(encode(S))): the structure on F induced by S along h.
inline LinftyStructure transfer_structure(const HomotopyEquivalence& h, const LinftyStructure& s) {
  if (!(*s.complex == *h.E)) throw std::invalid_argument("transfer_structure: structure lives on a different complex");
  for (int deg : h.F->degrees())
    if (deg > 0) throw std::invalid_argument("transfer_structure: target complex must sit in non-positive degrees");
  const LinftyMorphism u = morphism_from_equivalence(h);
  const Element nu = encode_structure(s, u.source.table);
  return decode_structure(push_mc(u, nu), h.F);
}

/// Transferred structure on H(E), which has zero differential.
inline LinftyStructure minimal_model(const LinftyStructure& s) {
  return transfer_structure(retract_to_cohomology(s.complex), s);
}

/// Whether l_2 satisfies the strict Jacobi identity (l_1 is ignored).
inline bool strict_jacobi(const LinftyStructure& s) {
  // With zero l_1 and no l_3 the arity-3 identity is the Jacobi identity of l_2.
  Complex flat;
  flat.basis = s.complex->basis;
  LinftyStructure probe{share(std::move(flat)), {}};
  if (auto it = s.brackets.find(2); it != s.brackets.end()) probe.brackets[2] = it->second;
  const BasisIndex bi(*probe.complex);
  for (const auto& xs : antisymmetric_tuples(bi, 3))
    if (!vec_is_zero(jacobi_expression(probe, bi, xs))) return false;
  return true;
}

struct CEClassReport {
  bool vanishes = false;
  std::optional<Element> primitive;  // m with {nu_2, m} = nu_3
  std::size_t cochains = 0;           // dimension of the space searched for m
  std::size_t rank = 0;               // rank of m -> {nu_2, m}
  std::size_t augmented_rank = 0;     // rank after adjoining nu_3
};

/// Class of l_3 in the cohomology of {nu_2, -} on weight (*,1), where nu_2 and
/// nu_3 encode l_2 and l_3. The structure must have zero differential; l_2
/// must be strict and l_3 a cocycle.
inline CEClassReport ce_class(const LinftyStructure& s) {
  for (const auto& [deg, m] : s.complex->d)
    if (!m.is_zero()) throw std::invalid_argument("ce_class: the complex must have zero differential");
  const TablePtr t = make_table(s.complex);
  const Element nu = encode_structure(s, t);
  const Element nu2 = weight_component(nu, {2, 1});
  const Element nu3 = weight_component(nu, {3, 1});
  if (!big_bracket(nu2, nu2).is_zero()) throw std::invalid_argument("ce_class: l_2 is not a strict Lie bracket");
  if (!big_bracket(nu2, nu3).is_zero()) throw std::invalid_argument("ce_class: l_3 is not a cocycle");

  CEClassReport rep;
  const auto cochains = enumerate_monomials(*t, 2, {2, 1});
  rep.cochains = cochains.size();
  std::vector<Element> images;
  std::map<Monomial, std::size_t> rows;
  for (const auto& m : cochains) {
    Element unit(t);
    unit.terms.emplace(m, Rational(1));
    images.push_back(big_bracket(nu2, unit));
    for (const auto& [w, q] : images.back().terms) rows.try_emplace(w, rows.size());
  }
  for (const auto& [w, q] : nu3.terms) rows.try_emplace(w, rows.size());
  Matrix a(rows.size(), cochains.size());
  Matrix aug(rows.size(), cochains.size() + 1);
  std::vector<Rational> b(rows.size());
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& [w, q] : images[j].terms) a(rows.at(w), j) = aug(rows.at(w), j) = q;
  for (const auto& [w, q] : nu3.terms) b[rows.at(w)] = aug(rows.at(w), cochains.size()) = q;
  rep.rank = a.rank();
  rep.augmented_rank = aug.rank();
  rep.vanishes = rep.rank == rep.augmented_rank;
  if (rep.vanishes) {
    auto x = a.solve(b);
    if (!x) throw std::logic_error("ce_class: consistent system without solution");
    Element m(t);
    for (std::size_t j = 0; j < cochains.size(); ++j)
      if (!is_zero((*x)[j])) m.terms.emplace(cochains[j], (*x)[j]);
    rep.primitive = m;
  }
  return rep;
}

/// Higher derived brackets l_n(a_1..a_n) = pr_{(*,0)} {...{Delta, a_1}, ..., a_n}
/// with Delta = d̂ + phi + pi, on the abelian subalgebra of biweight (*,0).
struct DerivedBrackets {
  Element delta;

  Element operator()(const std::vector<Element>& as) const {
    Element acc = delta;
    for (const auto& a : as) {
      acc = big_bracket(acc, a);
      if (acc.is_zero()) break;
    }
    return filter_weights(acc, [](Biweight w) { return w.second == 0; });
  }
};

/// pi must be a degree-3 element of biweight (*, >= 1) that is MC in the
/// (possibly twisted) context, so that Delta = total + pi squares to zero.
inline DerivedBrackets voronov_brackets(const ShiftedLieContext& ctx, const Element& pi) {
  Element p = pi;
  if (!p.table) p.table = ctx.table;
  if (!p.is_zero()) {
    require_degree(p, 3, "derived-bracket generator");
    for (const auto& w : p.biweights())
      if (w.second < 1) throw std::invalid_argument("voronov_brackets: generator has a component of right weight 0");
  }
  if (!mc_residual(ctx, p).is_zero()) throw std::invalid_argument("voronov_brackets: generator is not Maurer-Cartan");
  Element delta = ctx.total();
  delta += p;
  return {delta};
}

using MultilinearOp = std::function<Element(const std::vector<Element>&)>;

/// n-th identity of symmetric brackets of odd degree:
///   sum_{i+j=n+1} sum_{unshuffles} eps l_j(l_i(a_sigma(1..i)), a_sigma(i+1..n)),
/// with eps the Koszul sign of the unshuffle for the degrees of the inputs.
inline Element symmetric_linfty_defect(const MultilinearOp& l, const std::vector<Element>& as) {
  const std::size_t n = as.size();
  std::vector<int> deg(n);
  TablePtr t;
  for (std::size_t k = 0; k < n; ++k) {
    auto d = as[k].degree();
    if (!d) throw std::invalid_argument("symmetric_linfty_defect: inputs must be homogeneous");
    deg[k] = *d;
    if (as[k].table) t = as[k].table;
  }
  Element total(t);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<Element> inner, outer;
    int p = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) {
        inner.push_back(as[k]);
        for (std::size_t j = 0; j < k; ++j)
          if (!(mask >> j & 1)) p += deg[j] * deg[k];
      } else {
        outer.push_back(as[k]);
      }
    }
    Element first = l(inner);
    if (first.is_zero()) continue;
    outer.insert(outer.begin(), first);
    total += Rational(sign_of_parity(p)) * l(outer);
  }
  if (!total.table) total.table = t;
  return total;
}

/// Random monomial in the E* generators (biweight (k,0)), scaled at random.
inline Element random_dual_monomial(Rng& rng, const TablePtr& t, int max_len) {
  std::vector<std::uint32_t> duals;
  for (std::uint32_t i = 0; i < t->size(); ++i)
    if ((*t)[i].side == Side::FromEDual) duals.push_back(i);
  Element a(t);
  if (duals.empty()) return a;
  for (int attempt = 0; attempt < 64 && a.is_zero(); ++attempt) {
    Monomial w;
    const int len = uniform_int(rng, 1, max_len);
    for (int i = 0; i < len; ++i)
      w.push_back(duals[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(duals.size()) - 1))]);
    a.add_word(w, random_nonzero_scalar(rng));
  }
  return a;
}

/// Checks the symmetric L∞ identities of derived brackets in arities
/// 1..max_arity on random monomial inputs of biweight (*,0).
inline VerifyReport verify_derived_brackets(const DerivedBrackets& l, const TablePtr& t, int max_arity, int trials,
                                            std::uint64_t seed) {
  if (max_arity < 1) throw std::invalid_argument("verify_derived_brackets: arity bound must be positive");
  Rng rng(seed);
  VerifyReport rep;
  const MultilinearOp op = [&l](const std::vector<Element>& as) { return l(as); };
  for (int n = 1; n <= max_arity; ++n)
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<Element> as;
      for (int i = 0; i < n; ++i) as.push_back(random_dual_monomial(rng, t, 3));
      Element defect = symmetric_linfty_defect(op, as);
      ++rep.checked;
      if (!defect.is_zero()) {
        rep.ok = false;
        rep.counterexample = Counterexample{n, as, defect, "derived brackets violate the L-infinity identity"};
        return rep;
      }
    }
  return rep;
}

}  // namespace htt
