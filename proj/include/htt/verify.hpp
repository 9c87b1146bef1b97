#pragma once

// Randomized exact verifiers for the tree-sum morphism: the R_n identity with
// the twisted bracket on the target side, and the L∞ morphism equations for U.

#include "htt/morphism.hpp"
#include "htt/polarize.hpp"
#include "htt/random_element.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace htt {

struct Counterexample {
  int arity = 0;
  std::vector<Element> inputs;
  Element difference;
  std::string reason;
};

struct VerifyReport {
  bool ok = true;
  int checked = 0;
  std::optional<Counterexample> counterexample;
};

/// Random element homogeneous in both degree and biweight.
inline Element random_bihomogeneous(Rng& rng, const TablePtr& t, int max_terms, int max_len) {
  auto first = random_monomial(rng, *t, max_len);
  while (!first) first = random_monomial(rng, *t, max_len);
  const int deg = monomial_degree(*t, *first);
  const Biweight w = monomial_biweight(*t, *first);
  Element e = random_element_where(rng, t, max_terms, max_len, [&](const Monomial& m) {
    return monomial_degree(*t, m) == deg && monomial_biweight(*t, m) == w;
  });
  e.add_term(*first, random_nonzero_scalar(rng));
  return e;
}

/// Generators of O_E that some edge form of `homotopy` pairs nontrivially.
inline std::vector<std::uint32_t> active_generators(const GeneratorTable& t, const GradedMap& homotopy) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < t.size(); ++x)
    for (std::uint32_t y = 0; y < t.size(); ++y)
      if (!is_zero(homotopy_pairing(t, homotopy, x, y))) {
        out.push_back(x);
        break;
      }
  return out;
}

/// Bihomogeneous random element whose factors mostly come from `pool`, so that
/// tree operators built on the matching homotopy rarely vanish on it.
inline Element random_input(Rng& rng, const TablePtr& t, const std::vector<std::uint32_t>& pool, int max_terms,
                            int max_len) {
  if (pool.empty()) return random_bihomogeneous(rng, t, max_terms, max_len);
  auto draw = [&]() -> std::optional<Monomial> {
    Monomial w;
    const int len = uniform_int(rng, 1, max_len);
    for (int i = 0; i < len; ++i) {
      const bool from_pool = uniform_int(rng, 0, 3) != 0;
      w.push_back(from_pool ? pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))]
                            : static_cast<std::uint32_t>(uniform_int(rng, 0, static_cast<int>(t->size()) - 1)));
    }
    if (normalize_word(*t, w) == 0) return std::nullopt;
    return w;
  };
  auto first = draw();
  while (!first) first = draw();
  const int deg = monomial_degree(*t, *first);
  const Biweight w = monomial_biweight(*t, *first);
  Element e(t);
  e.add_term(*first, random_nonzero_scalar(rng));
  const int want = uniform_int(rng, 1, max_terms);
  for (int attempt = 0; attempt < 200 && static_cast<int>(e.terms.size()) < want; ++attempt) {
    auto m = draw();
    if (m && monomial_degree(*t, *m) == deg && monomial_biweight(*t, *m) == w) e.add_term(*m, random_nonzero_scalar(rng));
  }
  return e;
}

namespace detail {

// Wraps an n-ary operator so that every call checks that the output has
// biweight sum(inputs) - (n-1, n-1) and degree sum(inputs) - 3(n-1).
struct HomogeneityGuard {
  std::function<Element(const std::vector<Element>&)> op;
  std::optional<std::string> violation;

  Element operator()(const std::vector<Element>& xs) {
    Element out = op(xs);
    if (violation || out.is_zero()) return out;
    const int n = static_cast<int>(xs.size());
    int deg = -3 * (n - 1);
    Biweight w{-(n - 1), -(n - 1)};
    for (const auto& x : xs) {
      auto bws = x.biweights();
      auto d = x.degree();
      if (bws.size() != 1 || !d) return out;
      deg += *d;
      w.first += bws.begin()->first;
      w.second += bws.begin()->second;
    }
    auto od = out.degree();
    auto obw = out.biweights();
    if (!od || *od != deg || obw.size() != 1 || *obw.begin() != w)
      violation = "arity " + std::to_string(n) + " output is not of degree " + std::to_string(deg) + " and biweight (" +
                  std::to_string(w.first) + "," + std::to_string(w.second) + ")";
    return out;
  }
};

inline VerifyReport run_polarized(Rng& rng, const MorphismEquation& base, const std::vector<std::uint32_t>& pool, int n,
                                  int trials) {
  VerifyReport rep;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<Element> xs;
    for (int i = 0; i < n; ++i) xs.push_back(random_input(rng, base.source, pool, 2, 3));
    auto guard = std::make_shared<HomogeneityGuard>(HomogeneityGuard{base.u, std::nullopt});
    MorphismEquation eq = base;
    eq.u = [guard](const std::vector<Element>& a) { return (*guard)(a); };
    Element defect = morphism_defect(eq, xs);
    ++rep.checked;
    if (!defect.is_zero() || guard->violation) {
      rep.ok = false;
      rep.counterexample = Counterexample{n, xs, defect, guard->violation.value_or("morphism equation defect is nonzero")};
      return rep;
    }
  }
  return rep;
}

}  // namespace detail

/// [d, R_n] = sum (R_{n-1} o_1 l)^sigma - sum +-l~ o (R_p, R_q)^sigma: R is an
/// L∞ morphism from (O_E, d, {,}) to (O_E, d, {,}_{gf}) with R_1 = id.
inline VerifyReport verify_prop21(const HomotopyEquivalence& h, int n, int trials, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("verify_prop21: n must be at least 2");
  Rng rng(seed);
  auto ctx = make_context(h.E);
  const GradedMap gf = compose(h.g, h.f);
  const GradedMap homotopy = h.H_E;
  MorphismEquation eq;
  eq.source = eq.target = ctx.table;
  eq.d_source = eq.d_target = [ctx](const Element& a) { return differential(ctx, a); };
  eq.bracket_source = [](const Element& a, const Element& b) { return big_bracket(a, b); };
  eq.bracket_target = [gf](const Element& a, const Element& b) { return twisted_bracket(a, b, gf); };
  auto table = ctx.table;
  eq.u = [homotopy, table](const std::vector<Element>& xs) {
    Element r = tree_sum(homotopy, xs);
    if (!r.table) r.table = table;
    return r;
  };
  return detail::run_polarized(rng, eq, active_generators(*table, homotopy), n, trials);
}

/// Checks the L∞ morphism equations of U in every arity 2..max_arity.
inline VerifyReport verify_linfty_morphism(const LinftyMorphism& u, int max_arity, int trials, std::uint64_t seed) {
  if (max_arity < 2) throw std::invalid_argument("verify_linfty_morphism: arity bound must be at least 2");
  Rng rng(seed);
  MorphismEquation eq;
  eq.source = u.source.table;
  eq.target = u.target.table;
  eq.d_source = [src = u.source](const Element& a) { return differential(src, a); };
  eq.d_target = [tgt = u.target](const Element& a) { return differential(tgt, a); };
  eq.bracket_source = eq.bracket_target = [](const Element& a, const Element& b) { return big_bracket(a, b); };
  eq.u = [&u](const std::vector<Element>& xs) { return apply_u(u, xs); };
  const auto pool = active_generators(*u.source.table, u.homotopy);
  VerifyReport total;
  for (int n = 2; n <= max_arity; ++n) {
    VerifyReport rep = detail::run_polarized(rng, eq, pool, n, trials);
    total.checked += rep.checked;
    if (!rep.ok) {
      total.ok = false;
      total.counterexample = rep.counterexample;
      return total;
    }
  }
  return total;
}

}  // namespace htt
