#pragma once

// Seeded random algebra elements for the randomized verifiers.

#include "htt/algebra.hpp"
#include "htt/random.hpp"

#include <functional>

namespace htt {

/// Random normal-form monomial with at most `max_len` factors (may be the unit).
inline std::optional<Monomial> random_monomial(Rng& rng, const GeneratorTable& t, int max_len) {
  if (t.size() == 0) return Monomial{};
  Monomial w;
  const int len = uniform_int(rng, 0, max_len);
  for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint32_t>(uniform_int(rng, 0, static_cast<int>(t.size()) - 1)));
  if (normalize_word(t, w) == 0) return std::nullopt;
  return w;
}

/// Random element whose terms all satisfy `accept` (degree, biweight filters).
/// Returns zero if no acceptable monomial was found within the attempt budget.
inline Element random_element_where(Rng& rng, const TablePtr& t, int max_terms, int max_len,
                                    const std::function<bool(const Monomial&)>& accept) {
  Element e(t);
  const int want = uniform_int(rng, 1, max_terms);
  for (int attempt = 0; attempt < 400 && static_cast<int>(e.terms.size()) < want; ++attempt) {
    auto m = random_monomial(rng, *t, max_len);
    if (!m || !accept(*m)) continue;
    e.add_term(*m, random_nonzero_scalar(rng));
  }
  return e;
}

/// Random homogeneous element; the degree is that of the first monomial drawn.
inline Element random_homogeneous(Rng& rng, const TablePtr& t, int max_terms, int max_len) {
  auto first = random_monomial(rng, *t, max_len);
  while (!first) first = random_monomial(rng, *t, max_len);
  const int deg = monomial_degree(*t, *first);
  Element e = random_element_where(rng, t, max_terms, max_len, [&](const Monomial& m) { return monomial_degree(*t, m) == deg; });
  e.add_term(*first, random_nonzero_scalar(rng));
  return e;
}

/// Random element of a fixed degree with biweights accepted by `keep`.
inline Element random_of_degree(Rng& rng, const TablePtr& t, int degree, int max_terms, int max_len,
                                const std::function<bool(Biweight)>& keep) {
  return random_element_where(rng, t, max_terms, max_len, [&](const Monomial& m) {
    return monomial_degree(*t, m) == degree && keep(monomial_biweight(*t, m));
  });
}

/// Random combination of up to `max_terms` monomials of a given degree and biweight.
inline Element random_of_weight(Rng& rng, const TablePtr& t, int degree, Biweight w, int max_terms) {
  Element e(t);
  const auto pool = enumerate_monomials(*t, degree, w);
  if (pool.empty()) return e;
  const int n = uniform_int(rng, 1, max_terms);
  for (int i = 0; i < n; ++i)
    e.add_term(pool[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(pool.size()) - 1))], random_nonzero_scalar(rng));
  return e;
}

}  // namespace htt
