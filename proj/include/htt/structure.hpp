#pragma once

// L∞ structures on a complex concentrated in non-positive degrees, stored as
// coefficient tensors, and their encoding as Maurer–Cartan elements of
// biweight (*,1).

#include "htt/bracket.hpp"

#include <map>
#include <vector>

namespace htt {

/// Flat indexing of the basis of a complex, degree by degree.
struct BasisIndex {
  std::vector<std::pair<int, std::size_t>> entries;  // (degree, position)
  std::map<int, std::size_t> offset;

  explicit BasisIndex(const Complex& c) {
    for (int deg : c.degrees()) {
      offset[deg] = entries.size();
      for (std::size_t k = 0; k < c.dim(deg); ++k) entries.emplace_back(deg, k);
    }
  }
  std::size_t size() const { return entries.size(); }
  int degree(std::size_t i) const { return entries[i].first; }
  std::size_t global(int deg, std::size_t k) const { return offset.at(deg) + k; }
};

using Vec = std::vector<Rational>;

inline bool vec_is_zero(const Vec& v) {
  for (const auto& q : v)
    if (!is_zero(q)) return false;
  return true;
}

/// Brackets l_k (k >= 2) of degree 2-k, graded antisymmetric:
/// l(..., x, y, ...) = -(-1)^{|x||y|} l(..., y, x, ...). l_1 is the differential.
struct LinftyStructure {
  std::shared_ptr<const Complex> complex;
  // brackets[k][sorted global indices] = output vector in the global basis
  std::map<int, std::map<std::vector<std::size_t>, Vec>> brackets;

  int max_arity() const { return brackets.empty() ? 1 : brackets.rbegin()->first; }
};

namespace detail {

/// Sorts indices into ascending order; returns the antisymmetry sign, 0 if the
/// value is forced to vanish (repeated even-degree input).
inline int antisymmetric_sort(const BasisIndex& bi, std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const std::size_t x = idx[i];
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > x) {
      sign *= -sign_of_parity(bi.degree(x) * bi.degree(idx[j - 1]));
      idx[j] = idx[j - 1];
      --j;
    }
    idx[j] = x;
  }
  for (std::size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1] && parity(bi.degree(idx[i])) == 0) return 0;
  return sign;
}

}  // namespace detail

/// Value of l_k on basis vectors (k >= 2), or of d for k = 1.
inline Vec bracket_on_basis(const LinftyStructure& s, const BasisIndex& bi, std::vector<std::size_t> idx) {
  Vec out(bi.size());
  if (idx.size() == 1) {
    const auto [deg, k] = bi.entries[idx[0]];
    if (!s.complex->dim(deg + 1)) return out;
    const Matrix m = s.complex->block(deg);
    for (std::size_t r = 0; r < m.rows(); ++r) out[bi.global(deg + 1, r)] = m(r, k);
    return out;
  }
  auto kit = s.brackets.find(static_cast<int>(idx.size()));
  if (kit == s.brackets.end()) return out;
  const int sign = detail::antisymmetric_sort(bi, idx);
  if (sign == 0) return out;
  auto it = kit->second.find(idx);
  if (it == kit->second.end()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sign * it->second[i];
  return out;
}

/// Sets l_k on a tuple of basis vectors, storing the canonical sorted form.
inline void set_bracket(LinftyStructure& s, const BasisIndex& bi, std::vector<std::size_t> idx, const Vec& value) {
  const int sign = detail::antisymmetric_sort(bi, idx);
  if (sign == 0) {
    if (!vec_is_zero(value)) throw std::invalid_argument("bracket value on a repeated even input must vanish");
    return;
  }
  auto& slot = s.brackets[static_cast<int>(idx.size())];
  if (vec_is_zero(value)) {
    slot.erase(idx);
    return;
  }
  Vec v(value.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = sign * value[i];
  slot[idx] = v;
}

/// l_k on vector arguments (multilinear extension).
inline Vec bracket_on_vectors(const LinftyStructure& s, const BasisIndex& bi, const std::vector<Vec>& args) {
  Vec out(bi.size());
  std::vector<std::size_t> idx(args.size());
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t k, Rational c) {
    if (k == args.size()) {
      Vec v = bracket_on_basis(s, bi, idx);
      for (std::size_t i = 0; i < out.size(); ++i)
        if (!is_zero(v[i])) out[i] += c * v[i];
      return;
    }
    for (std::size_t i = 0; i < args[k].size(); ++i) {
      if (is_zero(args[k][i])) continue;
      idx[k] = i;
      rec(k + 1, c * args[k][i]);
    }
  };
  rec(0, Rational(1));
  return out;
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

/// Checks degree homogeneity (l_k has degree 2-k) of every stored bracket.
inline CheckReport check_structure_degrees(const LinftyStructure& s) {
  const BasisIndex bi(*s.complex);
  for (const auto& [k, table] : s.brackets) {
    if (k < 2) return CheckReport::fail("bracket arity must be at least 2");
    for (const auto& [idx, v] : table) {
      int deg = 2 - k;
      for (auto i : idx) deg += bi.degree(i);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!is_zero(v[i]) && bi.degree(i) != deg)
          return CheckReport::fail("l_" + std::to_string(k) + " is not of degree " + std::to_string(2 - k));
    }
  }
  return CheckReport::pass();
}

/// All sorted index tuples of length n admitted by antisymmetry.
inline std::vector<std::vector<std::size_t>> antisymmetric_tuples(const BasisIndex& bi, int n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < bi.size(); ++i) {
      if (!cur.empty() && cur.back() == i && parity(bi.degree(i)) == 0) continue;
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// Left-hand side of the n-th higher Jacobi identity on basis inputs:
/// sum over i+j = n+1 and (i, n-i)-unshuffles of
/// sgn(s) eps(s) (-1)^{i(j-1)} l_j(l_i(x_s1..x_si), x_s(i+1)..x_sn).
inline Vec jacobi_expression(const LinftyStructure& s, const BasisIndex& bi, const std::vector<std::size_t>& xs) {
  const std::size_t n = xs.size();
  Vec total(bi.size());
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t j = n + 1 - i;
    if (j < 1) continue;
    if (i >= 2 && !s.brackets.count(static_cast<int>(i))) continue;
    if (j >= 2 && !s.brackets.count(static_cast<int>(j))) continue;
    // Unshuffles: choose the first i positions as a subset in increasing order.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != i) continue;
      std::vector<std::size_t> first, rest;
      int sign = 1;
      std::size_t rest_count = 0;
      int rest_parity = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask >> k & 1) {
          // moving x_k in front of the rest elements already passed
          if (rest_count & 1) sign = -sign;
          sign *= sign_of_parity(bi.degree(xs[k]) * rest_parity);
          first.push_back(xs[k]);
        } else {
          ++rest_count;
          rest_parity += bi.degree(xs[k]);
          rest.push_back(xs[k]);
        }
      }
      sign *= sign_of_parity(static_cast<int>(i * (j - 1)));
      Vec inner = bracket_on_basis(s, bi, first);
      if (vec_is_zero(inner)) continue;
      std::vector<Vec> args{inner};
      for (auto r : rest) args.push_back(unit_vec(bi.size(), r));
      Vec outer = bracket_on_vectors(s, bi, args);
      for (std::size_t k = 0; k < total.size(); ++k)
        if (!is_zero(outer[k])) total[k] += sign * outer[k];
    }
  }
  return total;
}

/// Highest arity at which the higher Jacobi identities can be nonzero for
/// a complex in degrees [-m, 0].
inline int jacobi_arity_bound(const Complex& c) {
  const auto degs = c.degrees();
  const int m = degs.empty() ? 0 : -std::min(0, degs.front());
  return m + 3;
}

struct JacobiReport {
  bool ok = true;
  int arity = 0;
  std::vector<std::size_t> inputs;
  Vec value;
};

inline JacobiReport verify_higher_jacobi(const LinftyStructure& s, std::optional<int> max_arity = std::nullopt) {
  const BasisIndex bi(*s.complex);
  const int top = max_arity ? *max_arity : jacobi_arity_bound(*s.complex);
  for (int n = 1; n <= top; ++n)
    for (const auto& xs : antisymmetric_tuples(bi, n)) {
      Vec v = jacobi_expression(s, bi, xs);
      if (!vec_is_zero(v)) return {false, n, xs, v};
    }
  return {};
}

namespace detail {

/// l_k(x_1..x_k) = (-1)^{sum (k-i)|x_i|} {...{nu, xi^{x_1}}, ..., xi^{x_k}}.
inline int koszul_shift_sign(const BasisIndex& bi, const std::vector<std::size_t>& idx) {
  const int k = static_cast<int>(idx.size());
  int p = 0;
  for (int i = 0; i < k; ++i) p += (k - 1 - i) * bi.degree(idx[static_cast<std::size_t>(i)]);
  return sign_of_parity(p);
}

inline Element xi_of(const TablePtr& t, const BasisIndex& bi, std::size_t g) {
  const auto [deg, k] = bi.entries[g];
  return generator_element(t, t->id(Side::FromE, deg, k));
}

/// {...{nu, xi_1}, ..., xi_k}.
inline Element iterated_bracket(const TablePtr& t, const BasisIndex& bi, const Element& nu,
                                const std::vector<std::size_t>& idx) {
  Element acc = nu;
  for (auto g : idx) {
    acc = big_bracket(acc, xi_of(t, bi, g));
    if (acc.is_zero()) break;
  }
  return acc;
}

inline Vec xi_coordinates(const GeneratorTable& t, const BasisIndex& bi, const Element& e) {
  Vec v(bi.size());
  for (const auto& [m, q] : e.terms) {
    if (m.size() != 1 || t[m[0]].side != Side::FromE)
      throw std::logic_error("derived bracket did not land in the linear E-part");
    v[bi.global(t[m[0]].base_degree, t[m[0]].base_index)] = q;
  }
  return v;
}

}  // namespace detail

/// Maurer–Cartan element of biweight (*,1) encoding the brackets l_k, k >= 2.
inline Element encode_structure(const LinftyStructure& s, const TablePtr& t) {
  if (t->complex() != s.complex && !(*t->complex() == *s.complex))
    throw std::invalid_argument("encode_structure: table of a different complex");
  for (int deg : s.complex->degrees())
    if (deg > 0) throw std::invalid_argument("encode_structure: complex must sit in non-positive degrees");
  if (auto r = check_structure_degrees(s); !r) throw std::invalid_argument("encode_structure: " + r.message);
  const BasisIndex bi(*s.complex);
  Element nu(t);
  for (const auto& [k, table] : s.brackets)
    for (const auto& [idx, v] : table) {
      const int sign = detail::koszul_shift_sign(bi, idx);
      for (std::size_t y = 0; y < v.size(); ++y) {
        if (is_zero(v[y])) continue;
        Monomial w;
        for (auto g : idx) w.push_back(t->id(Side::FromEDual, bi.entries[g].first, bi.entries[g].second));
        const auto xi_y = t->id(Side::FromE, bi.entries[y].first, bi.entries[y].second);
        w.push_back(xi_y);
        Element unit(t);
        unit.add_word(w, 1);
        if (unit.is_zero()) throw std::logic_error("encode_structure: monomial vanishes");
        const Element image = detail::iterated_bracket(t, bi, unit, idx);
        const Rational kappa = image.terms.at(Monomial{xi_y});
        nu += (sign * v[y] / kappa) * unit;
      }
    }
  return nu;
}

inline LinftyStructure decode_structure(const Element& nu, const std::shared_ptr<const Complex>& c) {
  LinftyStructure s{c, {}};
  if (nu.is_zero()) return s;
  require_degree(nu, 3, "encoded structure");
  const auto& t = nu.table;
  const BasisIndex bi(*c);
  std::map<int, std::set<std::vector<std::size_t>>> tuples;
  for (const auto& [m, q] : nu.terms) {
    auto w = monomial_biweight(*t, m);
    if (w.second != 1 || w.first < 2)
      throw std::invalid_argument("decode_structure: component of biweight (" + std::to_string(w.first) + "," +
                                  std::to_string(w.second) + "); expected (k,1) with k >= 2");
    std::vector<std::size_t> idx;
    for (auto g : m)
      if ((*t)[g].side == Side::FromEDual) idx.push_back(bi.global((*t)[g].base_degree, (*t)[g].base_index));
    std::sort(idx.begin(), idx.end());
    tuples[w.first].insert(idx);
  }
  for (const auto& [k, set] : tuples) {
    const Element part = weight_component(nu, {k, 1});
    for (const auto& idx : set) {
      Vec v = detail::xi_coordinates(*t, bi, detail::iterated_bracket(t, bi, part, idx));
      const int sign = detail::koszul_shift_sign(bi, idx);
      for (auto& q : v) q *= sign;
      set_bracket(s, bi, idx, v);
    }
  }
  return s;
}

}  // namespace htt
