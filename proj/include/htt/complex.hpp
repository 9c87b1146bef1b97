#pragma once

#include "htt/matrix.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace htt {

/// Outcome of a structural check. `message` pinpoints the first failure.
struct CheckReport {
  bool ok = true;
  std::string message;

  static CheckReport pass() { return {}; }
  static CheckReport fail(std::string why) { return {false, std::move(why)}; }
  explicit operator bool() const { return ok; }
};

/// Finite-dimensional cochain complex over Q with named basis vectors.
///
/// `basis[i]` lists the generators of the degree-i piece in their matrix
/// order; `d[i]` is the block E_i -> E_{i+1} of shape dim(i+1) x dim(i).
/// Missing blocks are zero.
struct Complex {
  std::map<int, std::vector<std::string>> basis;
  std::map<int, Matrix> d;

  std::size_t dim(int degree) const {
    auto it = basis.find(degree);
    return it == basis.end() ? 0 : it->second.size();
  }

  std::size_t total_dim() const {
    std::size_t n = 0;
    for (const auto& [deg, names] : basis) n += names.size();
    return n;
  }

  /// Degrees carrying at least one generator, ascending.
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [deg, names] : basis)
      if (!names.empty()) out.push_back(deg);
    return out;
  }

  bool is_zero_space() const { return total_dim() == 0; }

  Matrix block(int degree) const {
    auto it = d.find(degree);
    if (it != d.end()) return it->second;
    return Matrix(dim(degree + 1), dim(degree));
  }

  /// Position of a named generator, if present.
  std::optional<std::pair<int, std::size_t>> find(const std::string& name) const {
    for (const auto& [deg, names] : basis)
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return std::make_pair(deg, i);
    return std::nullopt;
  }

  friend bool operator==(const Complex& a, const Complex& b) {
    return a.basis == b.basis && a.d == b.d;
  }
};

/// Linear map between complexes raising degree by `shift`.
struct GradedMap {
  std::shared_ptr<const Complex> source;
  std::shared_ptr<const Complex> target;
  int shift = 0;
  std::map<int, Matrix> blocks;  // source degree -> matrix target_{i+shift} x source_i

  Matrix block(int degree) const {
    auto it = blocks.find(degree);
    if (it != blocks.end()) return it->second;
    return Matrix(target->dim(degree + shift), source->dim(degree));
  }

  /// Drops blocks that are empty or zero so equal maps compare equal.
  void normalize() {
    for (auto it = blocks.begin(); it != blocks.end();)
      it = (it->second.empty() || it->second.is_zero()) ? blocks.erase(it) : std::next(it);
  }
};

/// The data (E, F, f, g, H_E, H_F) with f, g chain maps and
/// id_E - g f = H_E d + d H_E, id_F - f g = H_F d + d H_F.
struct HomotopyEquivalence {
  std::shared_ptr<const Complex> E;
  std::shared_ptr<const Complex> F;
  GradedMap f;
  GradedMap g;
  GradedMap H_E;
  GradedMap H_F;
};

inline std::shared_ptr<const Complex> share(Complex c) {
  return std::make_shared<const Complex>(std::move(c));
}

inline GradedMap zero_map(std::shared_ptr<const Complex> src, std::shared_ptr<const Complex> tgt, int shift) {
  return GradedMap{std::move(src), std::move(tgt), shift, {}};
}

inline GradedMap identity_map(const std::shared_ptr<const Complex>& c) {
  GradedMap m{c, c, 0, {}};
  for (int deg : c->degrees()) m.blocks[deg] = Matrix::identity(c->dim(deg));
  return m;
}

inline GradedMap differential_map(const std::shared_ptr<const Complex>& c) {
  GradedMap m{c, c, 1, {}};
  for (int deg : c->degrees()) m.blocks[deg] = c->block(deg);
  m.normalize();
  return m;
}

/// a ∘ b.
inline GradedMap compose(const GradedMap& a, const GradedMap& b) {
  GradedMap r{b.source, a.target, a.shift + b.shift, {}};
  for (int deg : b.source->degrees()) {
    if (a.target->dim(deg + r.shift) == 0) continue;
    r.blocks[deg] = a.block(deg + b.shift) * b.block(deg);
  }
  r.normalize();
  return r;
}

inline GradedMap add(const GradedMap& a, const GradedMap& b, const Rational& scale_b = 1) {
  if (a.shift != b.shift) throw std::invalid_argument("adding graded maps of different degree");
  GradedMap r{a.source, a.target, a.shift, {}};
  for (int deg : a.source->degrees()) {
    if (a.target->dim(deg + a.shift) == 0) continue;
    r.blocks[deg] = a.block(deg) + scale_b * b.block(deg);
  }
  r.normalize();
  return r;
}

inline GradedMap scale(const GradedMap& a, const Rational& s) {
  GradedMap r = a;
  for (auto& [deg, m] : r.blocks) m = s * m;
  r.normalize();
  return r;
}

inline bool maps_equal(const GradedMap& a, const GradedMap& b) {
  if (a.shift != b.shift) return false;
  std::set<int> degs;
  for (int deg : a.source->degrees()) degs.insert(deg);
  for (int deg : b.source->degrees()) degs.insert(deg);
  for (int deg : degs)
    if (!(a.block(deg) == b.block(deg))) return false;
  return true;
}

/// Checks matrix shapes, basis uniqueness and d ∘ d = 0.
inline CheckReport validate_complex(const Complex& c) {
  std::set<std::string> seen;
  for (const auto& [deg, names] : c.basis)
    for (const auto& n : names)
      if (!seen.insert(n).second) return CheckReport::fail("duplicate basis generator '" + n + "'");
  for (const auto& [deg, m] : c.d) {
    if (m.rows() != c.dim(deg + 1) || m.cols() != c.dim(deg))
      return CheckReport::fail("differential block at degree " + std::to_string(deg) + " has shape " +
                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                               std::to_string(c.dim(deg + 1)) + "x" + std::to_string(c.dim(deg)));
  }
  for (int deg : c.degrees()) {
    if (c.dim(deg + 2) == 0) continue;
    if (!(c.block(deg + 1) * c.block(deg)).is_zero())
      return CheckReport::fail("d o d != 0 on degree " + std::to_string(deg) + " (blocks " + std::to_string(deg) +
                               " -> " + std::to_string(deg + 1) + " -> " + std::to_string(deg + 2) + ")");
  }
  return CheckReport::pass();
}

inline CheckReport check_map_shapes(const GradedMap& m, const std::string& label) {
  for (const auto& [deg, block] : m.blocks) {
    if (block.rows() != m.target->dim(deg + m.shift) || block.cols() != m.source->dim(deg))
      return CheckReport::fail(label + ": block at degree " + std::to_string(deg) + " has wrong shape");
  }
  return CheckReport::pass();
}

inline CheckReport check_chain_map(const GradedMap& f, const std::string& label) {
  auto ds = differential_map(f.source);
  auto dt = differential_map(f.target);
  if (!maps_equal(compose(f, ds), compose(dt, f)))
    return CheckReport::fail(label + " is not a chain map");
  return CheckReport::pass();
}

/// Checks id - g∘f = H d + d H on `h.E` (and the symmetric identity on F).
inline CheckReport check_homotopy_equivalence(const HomotopyEquivalence& h) {
  if (h.f.shift != 0 || h.g.shift != 0) return CheckReport::fail("f and g must have degree 0");
  if (h.H_E.shift != -1 || h.H_F.shift != -1) return CheckReport::fail("homotopies must have degree -1");
  for (auto* m : {&h.f, &h.g, &h.H_E, &h.H_F})
    if (!m->source || !m->target) return CheckReport::fail("map without source/target");
  for (auto [m, label] : {std::pair{&h.f, "f"}, {&h.g, "g"}, {&h.H_E, "H_E"}, {&h.H_F, "H_F"}})
    if (auto r = check_map_shapes(*m, label); !r) return r;
  if (auto r = check_chain_map(h.f, "f"); !r) return r;
  if (auto r = check_chain_map(h.g, "g"); !r) return r;

  auto side = [](const GradedMap& there, const GradedMap& back, const GradedMap& H,
                 const std::shared_ptr<const Complex>& X, const std::string& name) -> CheckReport {
    auto d = differential_map(X);
    auto lhs = add(identity_map(X), compose(back, there), -1);
    auto rhs = add(compose(H, d), compose(d, H));
    for (int deg : X->degrees()) {
      if (!(lhs.block(deg) == rhs.block(deg)))
        return CheckReport::fail("homotopy identity on " + name + " fails at degree " + std::to_string(deg));
    }
    return CheckReport::pass();
  };
  if (auto r = side(h.f, h.g, h.H_E, h.E, "E"); !r) return r;
  if (auto r = side(h.g, h.f, h.H_F, h.F, "F"); !r) return r;
  return CheckReport::pass();
}

inline HomotopyEquivalence identity_equivalence(const std::shared_ptr<const Complex>& c) {
  return {c, c, identity_map(c), identity_map(c), zero_map(c, c, -1), zero_map(c, c, -1)};
}

/// Sign of permuting graded symbols: `perm[k]` is the original position of the
/// symbol that ends up in slot k; `degrees` are indexed by original position.
inline int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& degrees) {
  if (perm.size() != degrees.size()) throw std::invalid_argument("koszul_sign: length mismatch");
  int s = 1;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b] && parity(degrees[perm[a]]) && parity(degrees[perm[b]])) s = -s;
  return s;
}

}  // namespace htt
