#pragma once

#include "htt/complex.hpp"

#include <array>
#include <functional>
#include <set>

namespace htt {

struct MappingCylinder {
  std::shared_ptr<const Complex> C;
  HomotopyEquivalence E_to_C;  // f = i_E, g = p_E, H_E = 0, H_F = H_1
  HomotopyEquivalence C_to_F;  // f = p_F, g = i_F, H_E = H_2, H_F = 0
};

namespace detail {

/// Summands of C = E ⊕ E[1] ⊕ F in degree n are E_n, E_{n+1}, F_n.
enum Summand : int { kE = 0, kSE = 1, kF = 2 };

struct CylinderLayout {
  std::shared_ptr<const Complex> E, F;

  std::size_t dim(Summand s, int n) const {
    switch (s) {
      case kE: return E->dim(n);
      case kSE: return E->dim(n + 1);
      default: return F->dim(n);
    }
  }
  std::size_t offset(Summand s, int n) const {
    std::size_t o = 0;
    for (int k = 0; k < s; ++k) o += dim(static_cast<Summand>(k), n);
    return o;
  }
  std::size_t total(int n) const { return dim(kE, n) + dim(kSE, n) + dim(kF, n); }
};

/// Block of a map between summands, from degree n to degree n+shift of the cylinder.
using BlockFn = std::function<Matrix(Summand row, Summand col, int n)>;

inline std::map<int, Matrix> assemble(const CylinderLayout& lay, const std::set<int>& degrees, int shift,
                                      const BlockFn& fn) {
  std::map<int, Matrix> out;
  for (int n : degrees) {
    Matrix m(lay.total(n + shift), lay.total(n));
    if (m.empty()) continue;
    for (Summand r : {kE, kSE, kF})
      for (Summand c : {kE, kSE, kF}) {
        if (lay.dim(r, n + shift) == 0 || lay.dim(c, n) == 0) continue;
        Matrix b = fn(r, c, n);
        if (b.empty()) continue;
        const std::size_t ro = lay.offset(r, n + shift), co = lay.offset(c, n);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) m(ro + i, co + j) = b(i, j);
      }
    if (!m.is_zero()) out[n] = std::move(m);
  }
  return out;
}

}  // namespace detail

/// Mapping cylinder of a homotopy equivalence, C = E ⊕ E[1] ⊕ F with
/// d(e, e', y) = (de - e', -de', dy + f(e')).
///
/// The cylinder formulas are written for homotopies with g f - id = d H + H d;
/// the inputs and outputs here use id - g f = d H + H d, so every homotopy is
/// negated on the way in and on the way out.
inline MappingCylinder mapping_cylinder(const HomotopyEquivalence& h) {
  using namespace detail;
  if (auto r = check_homotopy_equivalence(h); !r) throw std::invalid_argument("mapping_cylinder: " + r.message);
  const auto& E = h.E;
  const auto& F = h.F;
  CylinderLayout lay{E, F};

  std::set<int> degs;
  for (int n : E->degrees()) degs.insert({n, n - 1});
  for (int n : F->degrees()) degs.insert(n);

  Complex c;
  for (int n : degs) {
    auto& names = c.basis[n];
    if (E->dim(n)) for (const auto& s : E->basis.at(n)) names.push_back("E." + s);
    if (E->dim(n + 1)) for (const auto& s : E->basis.at(n + 1)) names.push_back("sE." + s);
    if (F->dim(n)) for (const auto& s : F->basis.at(n)) names.push_back("F." + s);
    if (names.empty()) c.basis.erase(n);
  }

  // Homotopies in the cylinder's own sign convention.
  const GradedMap hE = scale(h.H_E, -1), hF = scale(h.H_F, -1);
  const auto& f = h.f;
  const auto& g = h.g;
  auto idE = [&](int n) { return Matrix::identity(E->dim(n)); };

  c.d = assemble(lay, degs, 1, [&](Summand r, Summand col, int n) -> Matrix {
    if (r == kE && col == kE) return E->block(n);
    if (r == kE && col == kSE) return -idE(n + 1);
    if (r == kSE && col == kSE) return -E->block(n + 1);
    if (r == kF && col == kSE) return f.block(n + 1);
    if (r == kF && col == kF) return F->block(n);
    return {};
  });
  auto C = share(std::move(c));

  auto make = [&](std::shared_ptr<const Complex> src, std::shared_ptr<const Complex> tgt, int shift,
                  std::map<int, Matrix> blocks) {
    GradedMap m{std::move(src), std::move(tgt), shift, std::move(blocks)};
    m.normalize();
    return m;
  };

  // Maps out of / into C are assembled by hand from the summand blocks.
  auto from_C = [&](const std::shared_ptr<const Complex>& tgt, int shift,
                    const std::function<Matrix(Summand, int)>& part) {
    std::map<int, Matrix> blocks;
    for (int n : degs) {
      Matrix m(tgt->dim(n + shift), lay.total(n));
      if (m.empty()) continue;
      for (Summand s : {kE, kSE, kF}) {
        if (lay.dim(s, n) == 0) continue;
        Matrix b = part(s, n);
        if (b.empty()) continue;
        const std::size_t o = lay.offset(s, n);
        for (std::size_t i = 0; i < b.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) m(i, o + j) = b(i, j);
      }
      blocks[n] = std::move(m);
    }
    return make(C, tgt, shift, std::move(blocks));
  };
  auto into_C = [&](const std::shared_ptr<const Complex>& src, Summand s) {
    std::map<int, Matrix> blocks;
    for (int n : src->degrees()) {
      Matrix m(lay.total(n), src->dim(n));
      if (m.empty()) continue;
      const std::size_t o = lay.offset(s, n);
      for (std::size_t i = 0; i < src->dim(n); ++i) m(o + i, i) = 1;
      blocks[n] = std::move(m);
    }
    return make(src, C, 0, std::move(blocks));
  };

  // i_F(y) = (0,0,y), p_F(e,e',y) = f(e) + y, H_2(e,e',y) = (0,e,0).
  GradedMap iF = into_C(F, kF);
  GradedMap pF = from_C(F, 0, [&](Summand s, int n) -> Matrix {
    if (s == kE) return f.block(n);
    if (s == kF) return Matrix::identity(F->dim(n));
    return {};
  });
  GradedMap H2 = make(C, C, -1, assemble(lay, degs, -1, [&](Summand r, Summand col, int n) -> Matrix {
                        if (r == kSE && col == kE) return Matrix::identity(E->dim(n));
                        return {};
                      }));

  // i_E(e) = (e,0,0), p_E(e,e',y) = e + H_E(e') + g(y).
  GradedMap iE = into_C(E, kE);
  GradedMap pE = from_C(E, 0, [&](Summand s, int n) -> Matrix {
    if (s == kE) return idE(n);
    if (s == kSE) return hE.block(n + 1);
    return g.block(n);
  });

  // H_1(e,e',y) with u = y + H_F f(e') - f H_E(e'):
  //   ( -g H_F(u) + H_E g(u) + H_E H_E(e'),  -g(u) - H_E(e'),  H_F(u) ).
  GradedMap H1 = make(C, C, -1, assemble(lay, degs, -1, [&](Summand r, Summand col, int n) -> Matrix {
    // Source summand col at cylinder degree n; target summand r at degree n-1.
    if (col == kE) return {};
    const bool from_e1 = col == kSE;  // e' lives in E_{n+1}; y lives in F_n
    // u as a map from the source summand into F_n.
    Matrix u = from_e1 ? hF.block(n + 1) * f.block(n + 1) - f.block(n) * hE.block(n + 1)
                       : Matrix::identity(F->dim(n));
    switch (r) {
      case kE: {
        Matrix v = (-1) * (g.block(n - 1) * hF.block(n)) * u + (hE.block(n) * g.block(n)) * u;
        if (from_e1) v = v + hE.block(n) * hE.block(n + 1);
        return v;
      }
      case kSE: {
        Matrix v = (-1) * g.block(n) * u;
        if (from_e1) v = v - hE.block(n + 1);
        return v;
      }
      default: {
        return hF.block(n) * u;
      }
    }
  }));

  MappingCylinder out;
  out.C = C;
  out.E_to_C = {E, C, iE, pE, zero_map(E, E, -1), scale(H1, -1)};
  out.C_to_F = {C, F, pF, iF, scale(H2, -1), zero_map(F, F, -1)};
  return out;
}

}  // namespace htt
