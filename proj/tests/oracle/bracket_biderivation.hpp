#pragma once

// The big bracket rebuilt as a graded biderivation from its values on
// generators, with its own word arithmetic:
//   {g, b1 b'} = {g, b1} b' + (-1)^{|g||b1|} b1 {g, b'}
//   {x y, b}   = x {y, b} + (-1)^{|y||b|} {x, b} y

#include "htt/algebra.hpp"

#include <map>
#include <vector>

namespace htt::oracle {

using Word = std::vector<std::uint32_t>;
using Poly = std::map<Word, Rational>;

/// Sorts a word by adjacent transpositions, one Koszul sign per swap of two
/// odd symbols; zero if an odd symbol repeats.
inline std::pair<int, Word> sort_word(const GeneratorTable& t, Word w) {
  int sign = 1;
  for (std::size_t pass = 0; pass < w.size(); ++pass)
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] > w[k + 1]) {
        if ((t.degree(w[k]) & 1) && (t.degree(w[k + 1]) & 1)) sign = -sign;
        std::swap(w[k], w[k + 1]);
      }
  for (std::size_t k = 0; k + 1 < w.size(); ++k)
    if (w[k] == w[k + 1] && (t.degree(w[k]) & 1)) return {0, w};
  return {sign, w};
}

inline void add_to(Poly& p, const Word& w, const Rational& q) {
  if (is_zero(q)) return;
  auto& slot = p[w];
  slot += q;
  if (is_zero(slot)) p.erase(w);
}

inline Poly mul(const GeneratorTable& t, const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [wa, qa] : a)
    for (const auto& [wb, qb] : b) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      auto [s, sorted] = sort_word(t, w);
      if (s) add_to(out, sorted, s * qa * qb);
    }
  return out;
}

inline int word_degree(const GeneratorTable& t, const Word& w) {
  int d = 0;
  for (auto g : w) d += t.degree(g);
  return d;
}

/// <x, y> on generators: 1 on (theta_a, xi^a), the mirrored value
/// -(-1)^{|x||y|} on (xi^a, theta_a), zero otherwise.
inline Rational generator_pairing(const GeneratorTable& t, std::uint32_t x, std::uint32_t y) {
  const auto& gx = t[x];
  const auto& gy = t[y];
  if (gx.base_degree != gy.base_degree || gx.base_index != gy.base_index || gx.side == gy.side) return 0;
  if (gx.side == Side::FromEDual) return 1;
  return ((t.degree(x) * t.degree(y)) & 1) ? 1 : -1;
}

inline Poly bracket_words(const GeneratorTable& t, const Word& a, const Word& b) {
  Poly out;
  if (a.empty() || b.empty()) return out;
  if (a.size() == 1) {
    const std::uint32_t g = a[0];
    const Word b1{b[0]}, rest(b.begin() + 1, b.end());
    const Rational v = generator_pairing(t, g, b[0]);
    if (!is_zero(v)) add_to(out, rest, v);
    if (!rest.empty()) {
      const int s = ((t.degree(g) * t.degree(b[0])) & 1) ? -1 : 1;
      Poly tail = mul(t, Poly{{b1, Rational(s)}}, bracket_words(t, a, rest));
      for (const auto& [w, q] : tail) add_to(out, w, q);
    }
    return out;
  }
  const Word x{a[0]}, y(a.begin() + 1, a.end());
  for (const auto& [w, q] : mul(t, Poly{{x, Rational(1)}}, bracket_words(t, y, b))) add_to(out, w, q);
  const int s = ((word_degree(t, y) * word_degree(t, b)) & 1) ? -1 : 1;
  for (const auto& [w, q] : mul(t, bracket_words(t, x, b), Poly{{y, Rational(s)}})) add_to(out, w, q);
  return out;
}

inline Element bracket_biderivation(const Element& a, const Element& b) {
  TablePtr tp = a.table ? a.table : b.table;
  Element out(tp);
  if (!tp) return out;
  Poly acc;
  for (const auto& [wa, qa] : a.terms)
    for (const auto& [wb, qb] : b.terms)
      for (const auto& [w, q] : bracket_words(*tp, wa, wb)) add_to(acc, w, qa * qb * q);
  for (const auto& [w, q] : acc) out.terms.emplace(w, q);
  return out;
}

}  // namespace htt::oracle
