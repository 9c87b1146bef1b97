#pragma once

// Tree operators by literal enumeration: flatten x_1 ... x_n into one word,
// pick every admissible (alpha_k, beta_k) per edge of the rooted order
// e_1 ... e_{n-1}, rearrange the word as
//   alpha_{n-1} beta_{n-1} ... alpha_1 beta_1 rest
// (the edge contracted first stands leftmost) and take the Koszul sign of
// that permutation symbol by symbol.

#include "bracket_biderivation.hpp"
#include "htt/trees.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace htt::oracle {

struct RootedEdge {
  std::size_t index;
  int parent, child;
};

/// Edges of a tree oriented away from vertex 1, ordered by decreasing child.
inline std::vector<RootedEdge> rooted_edges(const LabeledTree& tree) {
  std::vector<int> parent(static_cast<std::size_t>(tree.n) + 1, 0);
  parent[1] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [i, j] : tree.edges) {
      if (parent[static_cast<std::size_t>(i)] && !parent[static_cast<std::size_t>(j)]) {
        parent[static_cast<std::size_t>(j)] = i;
        changed = true;
      } else if (parent[static_cast<std::size_t>(j)] && !parent[static_cast<std::size_t>(i)]) {
        parent[static_cast<std::size_t>(i)] = j;
        changed = true;
      }
    }
  }
  std::vector<RootedEdge> out;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [i, j] = tree.edges[e];
    if (parent[static_cast<std::size_t>(j)] == i) out.push_back({e, i, j});
    else out.push_back({e, j, i});
  }
  std::sort(out.begin(), out.end(), [](const RootedEdge& a, const RootedEdge& b) { return a.child > b.child; });
  return out;
}

/// (theta_a, xi^c) -> (-1)^{|theta_a|} H_{ac}; (xi^c, theta_a) -> minus that.
inline Rational homotopy_form(const GeneratorTable& t, const GradedMap& h, std::uint32_t x, std::uint32_t y) {
  const bool x_dual = t[x].side == Side::FromEDual;
  if (x_dual == (t[y].side == Side::FromEDual)) return 0;
  const std::uint32_t a = x_dual ? x : y, c = x_dual ? y : x;
  if (t[a].base_degree != t[c].base_degree - 1) return 0;
  auto it = h.blocks.find(t[c].base_degree);
  if (it == h.blocks.end()) return 0;
  Rational v = it->second(t[a].base_index, t[c].base_index);
  if (t.degree(a) & 1) v = -v;
  return x_dual ? v : Rational(-v);
}

/// (theta_a, xi^c) -> M_{ac}; the mirrored order picks up -(-1)^{|x||y|}.
inline Rational composite_form(const GeneratorTable& t, const GradedMap& m, std::uint32_t x, std::uint32_t y) {
  const bool x_dual = t[x].side == Side::FromEDual;
  if (x_dual == (t[y].side == Side::FromEDual)) return 0;
  const std::uint32_t a = x_dual ? x : y, c = x_dual ? y : x;
  if (t[a].base_degree != t[c].base_degree) return 0;
  auto it = m.blocks.find(t[c].base_degree);
  if (it == m.blocks.end()) return 0;
  Rational v = it->second(t[a].base_index, t[c].base_index);
  if (x_dual) return v;
  return ((t.degree(x) * t.degree(y)) & 1) ? v : Rational(-v);
}

inline Element tree_eval_exhaustive(const LabeledTree& tree, const GradedMap& homotopy, const GradedMap* composite,
                                    const std::vector<Element>& xs) {
  TablePtr tp;
  for (const auto& x : xs)
    if (x.table) tp = x.table;
  Element result(tp);
  if (!tp) return result;
  const GeneratorTable& t = *tp;
  const auto order = rooted_edges(tree);

  auto form = [&](std::size_t edge, std::uint32_t x, std::uint32_t y) -> Rational {
    if (tree.mark && tree.mark->first == edge) {
      if (tree.mark->second == EdgeMark::Dotted) return generator_pairing(t, x, y);
      return composite_form(t, *composite, x, y);
    }
    return homotopy_form(t, homotopy, x, y);
  };

  Poly acc;
  std::vector<const std::pair<const Monomial, Rational>*> pick(xs.size());
  std::function<void(std::size_t)> over_terms = [&](std::size_t k) {
    if (k < xs.size()) {
      for (const auto& term : xs[k].terms) {
        pick[k] = &term;
        over_terms(k + 1);
      }
      return;
    }
    // Flattened word with the slot of every symbol.
    Word flat;
    std::vector<int> slot;
    Rational coeff = 1;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      coeff *= pick[i]->second;
      for (auto g : pick[i]->first) {
        flat.push_back(g);
        slot.push_back(static_cast<int>(i) + 1);
      }
    }
    std::vector<bool> used(flat.size(), false);
    std::vector<std::size_t> chosen;  // positions, pair by pair in edge order
    std::function<void(std::size_t, Rational)> choose = [&](std::size_t e, Rational value) {
      if (e == order.size()) {
        std::vector<std::size_t> perm;
        for (std::size_t k = chosen.size(); k >= 2; k -= 2) {
          perm.push_back(chosen[k - 2]);
          perm.push_back(chosen[k - 1]);
        }
        for (std::size_t p = 0; p < flat.size(); ++p)
          if (!used[p]) perm.push_back(p);
        int sign = 1;
        for (std::size_t u = 0; u < perm.size(); ++u)
          for (std::size_t v = u + 1; v < perm.size(); ++v)
            if (perm[u] > perm[v] && (t.degree(flat[perm[u]]) & 1) && (t.degree(flat[perm[v]]) & 1)) sign = -sign;
        Word rest;
        for (std::size_t p = 0; p < flat.size(); ++p)
          if (!used[p]) rest.push_back(flat[p]);
        auto [s, sorted] = sort_word(t, rest);
        if (s) add_to(acc, sorted, sign * s * value * coeff);
        return;
      }
      const auto& edge = order[e];
      for (std::size_t a = 0; a < flat.size(); ++a) {
        if (used[a] || slot[a] != edge.parent) continue;
        for (std::size_t b = 0; b < flat.size(); ++b) {
          if (used[b] || slot[b] != edge.child) continue;
          const Rational v = form(edge.index, flat[a], flat[b]);
          if (is_zero(v)) continue;
          used[a] = used[b] = true;
          chosen.push_back(a);
          chosen.push_back(b);
          choose(e + 1, value * v);
          chosen.pop_back();
          chosen.pop_back();
          used[a] = used[b] = false;
        }
      }
    };
    choose(0, Rational(1));
  };
  over_terms(0);
  for (const auto& [w, q] : acc) result.terms.emplace(w, q);
  return result;
}

}  // namespace htt::oracle
