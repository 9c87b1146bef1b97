#pragma once

#include "htt/complex.hpp"

#include <string>
#include <vector>

namespace htt {

/// Deformation retract of a complex onto its cohomology.
///
/// Returns the equivalence (E = C, F = H(C), f = p, g = i, H_E = h, H_F = 0)
/// with zero differential on H(C), p∘i = id and the side conditions
/// h∘i = 0, p∘h = 0, h∘h = 0.
///
/// Degree n of C is split as B_n ⊕ K_n ⊕ L_n (boundaries, a complement of
/// B_n in the cycles, a complement of the cycles); d restricts to an
/// isomorphism L_n -> B_{n+1} and h is its inverse on B_{n+1}.
inline HomotopyEquivalence retract_to_cohomology(const std::shared_ptr<const Complex>& c) {
  struct Split {
    std::vector<std::vector<Rational>> boundary, cohomology, complement;
  };
  std::map<int, Split> split;
  const auto degrees = c->degrees();

  auto unit = [](std::size_t n, std::size_t k) {
    std::vector<Rational> v(n);
    v[k] = 1;
    return v;
  };

  // Process degrees in ascending order so B_n is known when n is reached.
  std::map<int, std::vector<std::vector<Rational>>> boundaries;
  for (int deg : degrees) {
    const std::size_t n = c->dim(deg);
    Split s;
    s.boundary = boundaries[deg];
    auto cycles = c->block(deg).kernel();
    auto z_basis = extend_basis(s.boundary, cycles, n);
    s.cohomology.assign(z_basis.begin() + static_cast<std::ptrdiff_t>(s.boundary.size()), z_basis.end());
    std::vector<std::vector<Rational>> units;
    for (std::size_t k = 0; k < n; ++k) units.push_back(unit(n, k));
    auto full = extend_basis(z_basis, units, n);
    s.complement.assign(full.begin() + static_cast<std::ptrdiff_t>(z_basis.size()), full.end());
    if (!s.complement.empty()) {
      const Matrix dn = c->block(deg);
      auto& next = boundaries[deg + 1];
      for (const auto& l : s.complement) next.push_back(dn.apply(l));
    }
    split[deg] = std::move(s);
  }

  Complex h;
  for (int deg : degrees) {
    const auto& s = split[deg];
    for (std::size_t k = 0; k < s.cohomology.size(); ++k)
      h.basis[deg].push_back("H" + std::to_string(deg) + "_" + std::to_string(k));
  }
  for (auto it = h.basis.begin(); it != h.basis.end();)
    it = it->second.empty() ? h.basis.erase(it) : std::next(it);
  auto hc = share(std::move(h));

  GradedMap inc{hc, c, 0, {}}, proj{c, hc, 0, {}}, homotopy{c, c, -1, {}};
  for (int deg : degrees) {
    const auto& s = split[deg];
    const std::size_t n = c->dim(deg);
    std::vector<std::vector<Rational>> cols = s.boundary;
    cols.insert(cols.end(), s.cohomology.begin(), s.cohomology.end());
    cols.insert(cols.end(), s.complement.begin(), s.complement.end());
    Matrix change = Matrix::from_columns(n, cols);
    Matrix coords = *change.inverse();  // coordinates w.r.t. B | K | L
    const std::size_t nb = s.boundary.size(), nk = s.cohomology.size();

    if (nk > 0) {
      inc.blocks[deg] = Matrix::from_columns(n, s.cohomology);
      Matrix p(nk, n);
      for (std::size_t r = 0; r < nk; ++r)
        for (std::size_t j = 0; j < n; ++j) p(r, j) = coords(nb + r, j);
      proj.blocks[deg] = p;
    }
    if (nb > 0) {
      // b_k = d(l_k) for the complement basis l_k of degree deg-1.
      const auto& prev = split[deg - 1].complement;
      const std::size_t m = c->dim(deg - 1);
      Matrix hm(m, n);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < n; ++j) hm(i, j) += prev[k][i] * coords(k, j);
      homotopy.blocks[deg] = hm;
    }
  }
  inc.normalize();
  proj.normalize();
  homotopy.normalize();
  return {c, hc, proj, inc, homotopy, zero_map(hc, hc, -1)};
}

}  // namespace htt
