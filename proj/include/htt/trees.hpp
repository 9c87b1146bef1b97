#pragma once

// Labeled trees and the tree-sum operators built from a homotopy: each edge
// (i, j) contracts one factor of the i-th input with one factor of the j-th
// through the pairing <alpha, H(beta)>.

#include "htt/bracket.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

namespace htt {

enum class EdgeMark { Dotted, Wavy };

/// Tree on vertices 1..n; edges (i, j) with i < j, sorted lexicographically.
struct LabeledTree {
  int n = 1;
  std::vector<std::pair<int, int>> edges;
  std::optional<std::pair<std::size_t, EdgeMark>> mark;

  friend bool operator==(const LabeledTree& a, const LabeledTree& b) {
    return a.n == b.n && a.edges == b.edges && a.mark == b.mark;
  }
};

inline LabeledTree canonical_tree(int n, std::vector<std::pair<int, int>> edges) {
  for (auto& [i, j] : edges)
    if (i > j) std::swap(i, j);
  std::sort(edges.begin(), edges.end());
  return {n, std::move(edges), std::nullopt};
}

/// Decodes a Prüfer sequence over {1..n}.
inline LabeledTree tree_from_pruefer(int n, const std::vector<int>& seq) {
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 1);
  for (int v : seq) ++degree[static_cast<std::size_t>(v)];
  std::vector<std::pair<int, int>> edges;
  for (int v : seq) {
    int leaf = 1;
    while (degree[static_cast<std::size_t>(leaf)] != 1) ++leaf;
    edges.emplace_back(leaf, v);
    --degree[static_cast<std::size_t>(leaf)];
    --degree[static_cast<std::size_t>(v)];
  }
  int u = 0, w = 0;
  for (int v = 1; v <= n; ++v)
    if (degree[static_cast<std::size_t>(v)] == 1) (u == 0 ? u : w) = v;
  if (n >= 2) edges.emplace_back(u, w);
  return canonical_tree(n, std::move(edges));
}

/// All labeled trees on n vertices, in lexicographic order of Prüfer sequences.
inline std::vector<LabeledTree> enumerate_trees(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_trees: n must be positive");
  if (n <= 2) return {n == 1 ? LabeledTree{} : canonical_tree(2, {{1, 2}})};
  std::vector<LabeledTree> out;
  std::vector<int> seq(static_cast<std::size_t>(n - 2), 1);
  for (;;) {
    out.push_back(tree_from_pruefer(n, seq));
    std::size_t k = seq.size();
    while (k > 0 && seq[k - 1] == n) seq[--k] = 1;
    if (k == 0) break;
    ++seq[k - 1];
  }
  return out;
}

/// The degree -3 edge form <alpha, H(beta)>, antisymmetric under swapping
/// the arguments. On (theta_a, xi^c) it is (-1)^{|theta_a|} <theta_a, H xi^c>.
inline Rational homotopy_pairing(const GeneratorTable& t, const GradedMap& h, std::uint32_t x, std::uint32_t y) {
  const auto sx = t[x].side, sy = t[y].side;
  if (sx == sy) return 0;
  const bool dual_first = sx == Side::FromEDual;
  const auto& a = t[dual_first ? x : y];
  const auto& c = t[dual_first ? y : x];
  if (a.base_degree != c.base_degree - 1) return 0;
  auto it = h.blocks.find(c.base_degree);
  if (it == h.blocks.end()) return 0;
  Rational v = it->second(a.base_index, c.base_index);
  if (parity(a.degree)) v = -v;
  return dual_first ? v : Rational(-v);
}

/// Pairings available to tree edges.
struct EdgeForms {
  const GradedMap* homotopy;          // plain edges
  const GradedMap* composite = nullptr;  // wavy edges: <alpha, g f beta>
};

namespace detail {

struct TreeState {
  std::vector<Monomial> slots;
  Rational coeff;
};

inline Rational edge_value(const GeneratorTable& t, const LabeledTree& tree, std::size_t e, const EdgeForms& forms,
                           std::uint32_t x, std::uint32_t y) {
  if (tree.mark && tree.mark->first == e) {
    if (tree.mark->second == EdgeMark::Dotted) return pairing(t, x, y);
    if (!forms.composite) throw std::invalid_argument("wavy edge without g∘f");
    return twisted_pairing(t, *forms.composite, x, y);
  }
  return homotopy_pairing(t, *forms.homotopy, x, y);
}

/// An edge as it acts during evaluation: alpha is taken from the parent
/// vertex, beta from the child, with the tree rooted at vertex 1.
struct OrientedEdge {
  std::size_t index;  // position in tree.edges
  int parent;
  int child;
};

/// Edges oriented away from vertex 1 and ordered by decreasing child label.
/// With this order every tree enters R_n with coefficient +1.
inline std::vector<OrientedEdge> evaluation_order(const LabeledTree& tree) {
  std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(tree.n) + 1);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto [i, j] = tree.edges[e];
    adj[static_cast<std::size_t>(i)].emplace_back(j, e);
    adj[static_cast<std::size_t>(j)].emplace_back(i, e);
  }
  std::vector<OrientedEdge> out;
  std::vector<int> stack{1};
  std::vector<bool> seen(adj.size(), false);
  seen[1] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& [w, e] : adj[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      out.push_back({e, v, w});
      stack.push_back(w);
    }
  }
  std::sort(out.begin(), out.end(), [](const OrientedEdge& a, const OrientedEdge& b) { return a.child > b.child; });
  return out;
}

// Applies order[k-1], ..., order[0] (the last edge acts first). Each step moves
// the chosen alpha and then beta to the front of the whole word and removes them.
inline void apply_edges(const GeneratorTable& t, const LabeledTree& tree, const std::vector<OrientedEdge>& order,
                        const EdgeForms& forms, std::size_t remaining, TreeState& st, Element& out) {
  if (remaining == 0) {
    Monomial acc;
    int sign = 1;
    for (const auto& m : st.slots) {
      auto [s, next] = multiply_monomials(t, acc, m);
      if (s == 0) return;
      sign *= s;
      acc = std::move(next);
    }
    out.add_term(acc, sign * st.coeff);
    return;
  }
  const auto& edge = order[remaining - 1];
  const std::size_t i = static_cast<std::size_t>(edge.parent - 1);
  const std::size_t j = static_cast<std::size_t>(edge.child - 1);
  int before_i = 0;
  for (std::size_t k = 0; k < i; ++k) before_i += monomial_degree(t, st.slots[k]);
  int before_j = 0;
  for (std::size_t k = 0; k < j; ++k) before_j += monomial_degree(t, st.slots[k]);

  const Monomial xi = st.slots[i], xj = st.slots[j];
  int pa = before_i;
  for (std::size_t a = 0; a < xi.size(); pa += t.degree(xi[a]), ++a) {
    int pb = before_j - (i < j ? t.degree(xi[a]) : 0);
    for (std::size_t b = 0; b < xj.size(); pb += t.degree(xj[b]), ++b) {
      Rational v = edge_value(t, tree, edge.index, forms, xi[a], xj[b]);
      if (is_zero(v)) continue;
      const int s = sign_of_parity(t.degree(xi[a]) * pa + t.degree(xj[b]) * pb);
      TreeState next = st;
      next.slots[i].erase(next.slots[i].begin() + static_cast<std::ptrdiff_t>(a));
      next.slots[j].erase(next.slots[j].begin() + static_cast<std::ptrdiff_t>(b));
      next.coeff *= s * v;
      apply_edges(t, tree, order, forms, remaining - 1, next, out);
    }
  }
}

}  // namespace detail

/// Evaluates a tree on n inputs, multilinearly over their terms.
inline Element tree_eval(const LabeledTree& tree, const EdgeForms& forms, const std::vector<Element>& xs) {
  if (static_cast<int>(xs.size()) != tree.n) throw std::invalid_argument("tree_eval: arity mismatch");
  TablePtr tp;
  for (const auto& x : xs)
    if (x.table) tp = x.table;
  Element out(tp);
  if (!tp) return out;
  const auto& t = *tp;
  const auto order = detail::evaluation_order(tree);
  std::vector<const std::pair<const Monomial, Rational>*> pick(xs.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == xs.size()) {
      detail::TreeState st;
      st.coeff = 1;
      for (auto* p : pick) {
        st.slots.push_back(p->first);
        st.coeff *= p->second;
      }
      detail::apply_edges(t, tree, order, forms, order.size(), st, out);
      return;
    }
    for (const auto& term : xs[k].terms) {
      pick[k] = &term;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

/// R_n: sum of all labeled trees on n vertices.
inline Element tree_sum(const GradedMap& homotopy, const std::vector<Element>& xs) {
  const int n = static_cast<int>(xs.size());
  if (n == 0) throw std::invalid_argument("tree_sum: no inputs");
  TablePtr tp;
  for (const auto& x : xs)
    if (x.table) tp = x.table;
  Element out(tp);
  if (n == 1) return xs[0];
  EdgeForms forms{&homotopy};
  for (const auto& tree : enumerate_trees(n)) out += tree_eval(tree, forms, xs);
  return out;
}

}  // namespace htt
