#pragma once

// Graded-commutative algebra S(E[-1] ⊕ E*[-1]) of a complex E.
//
// A basis vector e of E_d gives two generators: xi (side FromE, degree d+1,
// biweight (0,1)) and theta (side FromEDual, degree -d+1, biweight (1,0)).
// Generators are numbered in canonical order (degree, side, name) and a
// monomial is the sorted list of its generator ids.

#include "htt/complex.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

namespace htt {

enum class Side { FromE, FromEDual };

using Biweight = std::pair<int, int>;

struct Generator {
  Side side;
  std::string base_name;
  int base_degree;
  std::size_t base_index;  // position inside basis[base_degree]
  int degree;              // algebra degree
  Biweight biweight;
};

inline int algebra_degree(Side s, int base_degree) { return s == Side::FromE ? base_degree + 1 : -base_degree + 1; }

class GeneratorTable {
 public:
  explicit GeneratorTable(std::shared_ptr<const Complex> c) : complex_(std::move(c)) {
    for (const auto& [deg, names] : complex_->basis)
      for (std::size_t k = 0; k < names.size(); ++k)
        for (Side s : {Side::FromE, Side::FromEDual})
          gens_.push_back({s, names[k], deg, k, algebra_degree(s, deg),
                           s == Side::FromE ? Biweight{0, 1} : Biweight{1, 0}});
    std::sort(gens_.begin(), gens_.end(), [](const Generator& a, const Generator& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      if (a.side != b.side) return a.side < b.side;
      return a.base_name < b.base_name;
    });
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      index_[{g.side, g.base_degree, g.base_index}] = static_cast<std::uint32_t>(i);
    }
  }

  const std::shared_ptr<const Complex>& complex() const { return complex_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::uint32_t id) const { return gens_[id]; }
  int degree(std::uint32_t id) const { return gens_[id].degree; }
  bool odd(std::uint32_t id) const { return parity(gens_[id].degree) != 0; }

  std::uint32_t id(Side s, int base_degree, std::size_t base_index) const {
    auto it = index_.find({s, base_degree, base_index});
    if (it == index_.end()) throw std::invalid_argument("no such generator");
    return it->second;
  }

  std::uint32_t id(Side s, const std::string& name) const {
    auto pos = complex_->find(name);
    if (!pos) throw std::invalid_argument("unknown generator '" + name + "'");
    return id(s, pos->first, pos->second);
  }

  /// The generator on the other side attached to the same basis vector.
  std::uint32_t partner(std::uint32_t id_) const {
    const auto& g = gens_[id_];
    return id(g.side == Side::FromE ? Side::FromEDual : Side::FromE, g.base_degree, g.base_index);
  }

 private:
  std::shared_ptr<const Complex> complex_;
  std::vector<Generator> gens_;
  std::map<std::tuple<Side, int, std::size_t>, std::uint32_t> index_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

inline TablePtr make_table(std::shared_ptr<const Complex> c) { return std::make_shared<const GeneratorTable>(std::move(c)); }

using Monomial = std::vector<std::uint32_t>;

/// Sorts a word of generators into normal form. Returns the Koszul sign, or 0
/// if an odd generator repeats.
inline int normalize_word(const GeneratorTable& t, Monomial& w) {
  int sign = 1;
  // Insertion sort tracking odd/odd transpositions.
  for (std::size_t i = 1; i < w.size(); ++i) {
    const std::uint32_t x = w[i];
    std::size_t j = i;
    while (j > 0 && w[j - 1] > x) {
      if (t.odd(x) && t.odd(w[j - 1])) sign = -sign;
      w[j] = w[j - 1];
      --j;
    }
    w[j] = x;
  }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && t.odd(w[i])) return 0;
  return sign;
}

inline int monomial_degree(const GeneratorTable& t, const Monomial& m) {
  int d = 0;
  for (auto g : m) d += t.degree(g);
  return d;
}

inline Biweight monomial_biweight(const GeneratorTable& t, const Monomial& m) {
  Biweight w{0, 0};
  for (auto g : m) (t[g].side == Side::FromEDual ? w.first : w.second) += 1;
  return w;
}

/// Product of two normal-form monomials; sign 0 means the product vanishes.
inline std::pair<int, Monomial> multiply_monomials(const GeneratorTable& t, const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  int sign = 1;
  std::size_t i = 0, j = 0;
  // Count odd generators of a not yet emitted; each odd b passing them flips.
  int odd_left = 0;
  for (auto g : a) odd_left += t.odd(g);
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      if (j < b.size() && a[i] == b[j] && t.odd(a[i])) return {0, {}};
      odd_left -= t.odd(a[i]);
      out.push_back(a[i++]);
    } else {
      if (t.odd(b[j]) && (odd_left & 1)) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  return {sign, out};
}

/// All normal-form monomials of the given degree and biweight, in canonical order.
inline std::vector<Monomial> enumerate_monomials(const GeneratorTable& t, int degree, Biweight w) {
  std::vector<std::uint32_t> duals, primals;
  for (std::uint32_t i = 0; i < t.size(); ++i) (t[i].side == Side::FromEDual ? duals : primals).push_back(i);
  std::vector<Monomial> out;
  Monomial cur;
  // Chooses `left` more ids from pool[start..] as a multiset (odd ids at most once).
  std::function<void(const std::vector<std::uint32_t>&, std::size_t, int, const std::function<void()>&)> pick =
      [&](const std::vector<std::uint32_t>& pool, std::size_t start, int left, const std::function<void()>& done) {
        if (left == 0) return done();
        for (std::size_t k = start; k < pool.size(); ++k) {
          if (!cur.empty() && cur.back() == pool[k] && t.odd(pool[k])) continue;
          cur.push_back(pool[k]);
          pick(pool, k, left - 1, done);
          cur.pop_back();
        }
      };
  pick(duals, 0, w.first, [&] {
    pick(primals, 0, w.second, [&] {
      Monomial m = cur;
      if (monomial_degree(t, m) != degree) return;
      if (normalize_word(t, m) != 0) out.push_back(m);
    });
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Exact linear combination of normal-form monomials.
struct Element {
  TablePtr table;
  std::map<Monomial, Rational> terms;

  Element() = default;
  explicit Element(TablePtr t) : table(std::move(t)) {}

  bool is_zero() const { return terms.empty(); }

  void add_term(const Monomial& m, const Rational& q) {
    if (htt::is_zero(q)) return;
    auto [it, inserted] = terms.emplace(m, q);
    if (!inserted) {
      it->second += q;
      if (htt::is_zero(it->second)) terms.erase(it);
    }
  }

  /// Adds q times an arbitrary word of generators (normalized here).
  void add_word(Monomial w, const Rational& q) {
    int s = normalize_word(*table, w);
    if (s != 0) add_term(w, s * q);
  }

  Element& operator+=(const Element& o) {
    check_same(o);
    if (!table) table = o.table;
    for (const auto& [m, q] : o.terms) add_term(m, q);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same(o);
    if (!table) table = o.table;
    for (const auto& [m, q] : o.terms) add_term(m, -q);
    return *this;
  }
  Element& operator*=(const Rational& s) {
    if (htt::is_zero(s)) terms.clear();
    else
      for (auto& [m, q] : terms) q *= s;
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }

  friend bool operator==(const Element& a, const Element& b) { return a.terms == b.terms; }

  void check_same(const Element& o) const {
    if (table && o.table && table != o.table && table->complex() != o.table->complex())
      throw std::invalid_argument("elements over different complexes");
  }

  /// Degree if all terms share one; nullopt for inhomogeneous elements. Zero has degree 0.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [m, q] : terms) {
      int k = monomial_degree(*table, m);
      if (d && *d != k) return std::nullopt;
      d = k;
    }
    return terms.empty() ? std::optional<int>(0) : d;
  }

  std::set<Biweight> biweights() const {
    std::set<Biweight> out;
    for (const auto& [m, q] : terms) out.insert(monomial_biweight(*table, m));
    return out;
  }
};

inline Element scalar(const TablePtr& t, const Rational& q) {
  Element e(t);
  e.add_term({}, q);
  return e;
}

inline Element embed_generator(const TablePtr& t, Side s, const std::string& name) {
  Element e(t);
  e.add_term({t->id(s, name)}, 1);
  return e;
}

inline Element generator_element(const TablePtr& t, std::uint32_t id, const Rational& q = 1) {
  Element e(t);
  e.add_term({id}, q);
  return e;
}

inline Element product(const Element& a, const Element& b) {
  a.check_same(b);
  Element out(a.table ? a.table : b.table);
  for (const auto& [ma, qa] : a.terms)
    for (const auto& [mb, qb] : b.terms) {
      auto [s, m] = multiply_monomials(*out.table, ma, mb);
      if (s != 0) out.add_term(m, s * qa * qb);
    }
  return out;
}

inline Element weight_component(const Element& a, Biweight w) {
  Element out(a.table);
  for (const auto& [m, q] : a.terms)
    if (monomial_biweight(*a.table, m) == w) out.terms.emplace(m, q);
  return out;
}

/// Projection onto W_k, the span of biweights (n, n+k).
inline Element w_component(const Element& a, int k) {
  Element out(a.table);
  for (const auto& [m, q] : a.terms) {
    auto w = monomial_biweight(*a.table, m);
    if (w.second - w.first == k) out.terms.emplace(m, q);
  }
  return out;
}

/// Projection onto the terms whose biweight satisfies a predicate.
inline Element filter_weights(const Element& a, const std::function<bool(Biweight)>& keep) {
  Element out(a.table);
  for (const auto& [m, q] : a.terms)
    if (keep(monomial_biweight(*a.table, m))) out.terms.emplace(m, q);
  return out;
}

/// Element of A ⊗ A as a sum of monomial pairs.
struct Tensor2 {
  TablePtr table;
  std::map<std::pair<Monomial, Monomial>, Rational> terms;

  void add_term(const Monomial& a, const Monomial& b, const Rational& q) {
    if (htt::is_zero(q)) return;
    auto [it, inserted] = terms.emplace(std::make_pair(a, b), q);
    if (!inserted) {
      it->second += q;
      if (htt::is_zero(it->second)) terms.erase(it);
    }
  }
  friend bool operator==(const Tensor2& a, const Tensor2& b) { return a.terms == b.terms; }
};

/// (a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd.
inline Tensor2 tensor_product(const Tensor2& x, const Tensor2& y) {
  const auto& t = *x.table;
  Tensor2 out{x.table, {}};
  for (const auto& [ab, p] : x.terms)
    for (const auto& [cd, q] : y.terms) {
      auto [s1, ac] = multiply_monomials(t, ab.first, cd.first);
      if (s1 == 0) continue;
      auto [s2, bd] = multiply_monomials(t, ab.second, cd.second);
      if (s2 == 0) continue;
      int s = s1 * s2 * sign_of_parity(monomial_degree(t, ab.second) * monomial_degree(t, cd.first));
      out.add_term(ac, bd, s * p * q);
    }
  return out;
}

/// Sum over splittings of each monomial into an ordered complementary pair;
/// the left factor is moved to the front with its Koszul sign.
inline Tensor2 coproduct(const Element& a) {
  const auto& t = *a.table;
  Tensor2 out{a.table, {}};
  for (const auto& [m, q] : a.terms) {
    const std::size_t n = m.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      Monomial left, right;
      int sign = 1;
      int odd_right = 0;  // odd factors already placed in the right part
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1) {
          if (t.odd(m[i]) && (odd_right & 1)) sign = -sign;
          left.push_back(m[i]);
        } else {
          odd_right += t.odd(m[i]);
          right.push_back(m[i]);
        }
      }
      out.add_term(left, right, sign * q);
    }
  }
  return out;
}

/// Pairing of generators of the E* side with the E side, extended to the
/// opposite order by <x, y> = -(-1)^{|x||y|} <y, x>.
///
/// `dual_first(a, x)` gives <theta_a, xi^x> for a FromEDual id and a FromE id.
template <class DualFirst>
Rational ordered_pairing(const GeneratorTable& t, std::uint32_t x, std::uint32_t y, const DualFirst& dual_first) {
  const auto sx = t[x].side, sy = t[y].side;
  if (sx == sy) return 0;
  if (sx == Side::FromEDual) return dual_first(x, y);
  Rational v = dual_first(y, x);
  if (htt::is_zero(v)) return v;
  return -sign_of_parity(t.degree(x) * t.degree(y)) * v;
}

/// The canonical pairing of E* with E.
inline Rational pairing(const GeneratorTable& t, std::uint32_t x, std::uint32_t y) {
  return ordered_pairing(t, x, y, [&](std::uint32_t a, std::uint32_t b) -> Rational {
    return t[a].base_degree == t[b].base_degree && t[a].base_index == t[b].base_index ? 1 : 0;
  });
}

/// <theta_a, M xi^b> for a degree-preserving graded map M on E.
inline Rational twisted_pairing(const GeneratorTable& t, const GradedMap& m, std::uint32_t x, std::uint32_t y) {
  return ordered_pairing(t, x, y, [&](std::uint32_t a, std::uint32_t b) -> Rational {
    const auto& ga = t[a];
    const auto& gb = t[b];
    if (ga.base_degree != gb.base_degree + m.shift) return 0;
    auto it = m.blocks.find(gb.base_degree);
    if (it == m.blocks.end()) return 0;
    return it->second(ga.base_index, gb.base_index);
  });
}

}  // namespace htt
