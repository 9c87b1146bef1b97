#pragma once

// Seeded generators for complexes and homotopy equivalences. Used by the
// randomized verifiers and by the test suites; every draw goes through an
// explicit std::mt19937_64 so results depend only on the seed.

#include "htt/complex.hpp"
#include "htt/retract.hpp"

#include <random>
#include <string>

namespace htt {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Small rational, usually an integer in [-2, 2], occasionally a half or third.
inline Rational random_scalar(Rng& rng) {
  Rational q(uniform_int(rng, -2, 2));
  if (uniform_int(rng, 0, 5) == 0) q /= uniform_int(rng, 2, 3);
  return q;
}

inline Rational random_nonzero_scalar(Rng& rng) {
  for (;;) {
    Rational q = random_scalar(rng);
    if (!is_zero(q)) return q;
  }
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(rng);
  return m;
}

/// Unimodular integer matrix with small entries (product of unit triangulars).
inline Matrix random_invertible(Rng& rng, std::size_t n) {
  Matrix lo = Matrix::identity(n), up = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo(i, j) = uniform_int(rng, -1, 1);
      up(j, i) = uniform_int(rng, -1, 1);
    }
  return lo * up;
}

inline std::string generator_name(const std::string& prefix, int degree, std::size_t k) {
  std::string deg = degree < 0 ? "m" + std::to_string(-degree) : std::to_string(degree);
  return prefix + deg + "_" + std::to_string(k);
}

/// Complex with prescribed dimensions and differential ranks, in scrambled bases.
/// `rank[n]` is the rank of d: E_n -> E_{n+1}; requires rank[n-1] + rank[n] <= dim[n].
inline Complex complex_with_ranks(Rng& rng, const std::map<int, std::size_t>& dims,
                                  const std::map<int, std::size_t>& ranks, const std::string& prefix) {
  Complex c;
  for (const auto& [deg, n] : dims)
    for (std::size_t k = 0; k < n; ++k) c.basis[deg].push_back(generator_name(prefix, deg, k));
  std::map<int, Matrix> change;
  for (const auto& [deg, n] : dims) change[deg] = random_invertible(rng, n);
  auto rank = [&](int deg) {
    auto it = ranks.find(deg);
    return it == ranks.end() ? std::size_t{0} : it->second;
  };
  for (const auto& [deg, n] : dims) {
    const std::size_t r = rank(deg);
    if (r == 0 || c.dim(deg + 1) == 0) continue;
    // Standard form: the last r basis vectors of degree deg map onto the first r of deg+1.
    Matrix d(c.dim(deg + 1), n);
    for (std::size_t k = 0; k < r; ++k) d(k, n - r + k) = 1;
    c.d[deg] = change[deg + 1] * d * *change[deg].inverse();
  }
  return c;
}

/// Random complex with degrees in [lo, hi] and at most `max_dim` generators per degree.
inline Complex random_complex(Rng& rng, int lo, int hi, std::size_t max_dim, const std::string& prefix = "e") {
  std::map<int, std::size_t> dims, ranks;
  for (int deg = lo; deg <= hi; ++deg) dims[deg] = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(max_dim)));
  std::size_t incoming = 0;
  for (int deg = lo; deg <= hi; ++deg) {
    std::size_t room = dims[deg] - incoming;
    std::size_t next = deg < hi ? dims[deg + 1] : 0;
    std::size_t r = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(std::min(room, next))));
    ranks[deg] = r;
    incoming = r;
  }
  for (auto it = dims.begin(); it != dims.end();) it = it->second == 0 ? dims.erase(it) : std::next(it);
  return complex_with_ranks(rng, dims, ranks, prefix);
}

/// Conjugates a complex by a random change of basis; returns the new complex and
/// the chain isomorphisms to and from it.
struct Rebasis {
  std::shared_ptr<const Complex> complex;
  GradedMap to, from;
};

inline Rebasis random_rebasis(Rng& rng, const std::shared_ptr<const Complex>& c, const std::string& prefix) {
  Complex out;
  std::map<int, Matrix> p, pinv;
  for (int deg : c->degrees()) {
    p[deg] = random_invertible(rng, c->dim(deg));
    pinv[deg] = *p[deg].inverse();
    for (std::size_t k = 0; k < c->dim(deg); ++k) out.basis[deg].push_back(generator_name(prefix, deg, k));
  }
  for (int deg : c->degrees())
    if (c->dim(deg + 1)) {
      Matrix m = p[deg + 1] * c->block(deg) * pinv[deg];
      if (!m.is_zero()) out.d[deg] = m;
    }
  auto oc = share(std::move(out));
  GradedMap to{c, oc, 0, p}, from{oc, c, 0, pinv};
  return {oc, to, from};
}

/// Random homotopy equivalence out of E. F is H(E) plus a random acyclic
/// complex in scrambled coordinates; f and g are then moved within their
/// homotopy classes so that g∘f is not idempotent in general.
inline HomotopyEquivalence random_equivalence(Rng& rng, const std::shared_ptr<const Complex>& E, int lo, int hi,
                                              std::size_t max_extra = 2, const std::string& prefix = "y") {
  auto ret = retract_to_cohomology(E);  // f = p : E -> H, g = i : H -> E, H_E = h
  const auto& H = ret.F;

  // Acyclic pieces: pairs of generators in adjacent degrees with d = 1.
  std::map<int, std::size_t> dims, ranks;
  for (int deg : H->degrees()) dims[deg] += H->dim(deg);
  std::map<int, std::size_t> pairs;
  for (int deg = lo; deg < hi; ++deg) {
    std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(max_extra)));
    pairs[deg] = k;
    dims[deg] += k;
    dims[deg + 1] += k;
  }
  for (auto it = dims.begin(); it != dims.end();) it = it->second == 0 ? dims.erase(it) : std::next(it);

  // Standard coordinates on F: [H_n | targets of pairs from n-1 | sources of pairs to n+1].
  Complex fs;
  for (const auto& [deg, n] : dims)
    for (std::size_t k = 0; k < n; ++k) fs.basis[deg].push_back(generator_name(prefix, deg, k));
  auto src_offset = [&](int deg) { return H->dim(deg) + (pairs.count(deg - 1) ? pairs[deg - 1] : 0); };
  auto tgt_offset = [&](int deg) { return H->dim(deg); };
  for (const auto& [deg, k] : pairs) {
    if (k == 0) continue;
    Matrix d(fs.dim(deg + 1), fs.dim(deg));
    for (std::size_t j = 0; j < k; ++j) d(tgt_offset(deg + 1) + j, src_offset(deg) + j) = 1;
    fs.d[deg] = d;
  }
  auto Fs = share(std::move(fs));

  GradedMap j{H, Fs, 0, {}}, q{Fs, H, 0, {}}, hF{Fs, Fs, -1, {}};
  for (int deg : H->degrees()) {
    Matrix jm(Fs->dim(deg), H->dim(deg));
    for (std::size_t k = 0; k < H->dim(deg); ++k) jm(k, k) = 1;
    j.blocks[deg] = jm;
    q.blocks[deg] = jm.transpose();
  }
  for (const auto& [deg, k] : pairs) {
    if (k == 0) continue;
    Matrix hm(Fs->dim(deg), Fs->dim(deg + 1));
    for (std::size_t t = 0; t < k; ++t) hm(src_offset(deg) + t, tgt_offset(deg + 1) + t) = 1;
    hF.blocks[deg + 1] = hm;
  }
  j.normalize();
  q.normalize();
  hF.normalize();

  auto rb = random_rebasis(rng, Fs, prefix);
  const auto& F = rb.complex;
  GradedMap f = compose(rb.to, compose(j, ret.f));
  GradedMap g = compose(ret.g, compose(q, rb.from));
  GradedMap HE = ret.H_E;
  GradedMap HF = compose(rb.to, compose(hF, rb.from));

  // f' = f + d k + k d with H_E' = H_E - g k, H_F' = H_F - k g.
  auto dE = differential_map(E);
  auto dF = differential_map(F);
  GradedMap k{E, F, -1, {}};
  for (int deg : E->degrees())
    if (F->dim(deg - 1)) k.blocks[deg] = random_matrix(rng, F->dim(deg - 1), E->dim(deg));
  k.normalize();
  f = add(f, add(compose(dF, k), compose(k, dE)));
  HE = add(HE, compose(g, k), -1);
  HF = add(HF, compose(k, g), -1);

  // g' = g + d k' + k' d with H_E' = H_E - k' f, H_F' = H_F - f k'.
  GradedMap kp{F, E, -1, {}};
  for (int deg : F->degrees())
    if (E->dim(deg - 1)) kp.blocks[deg] = random_matrix(rng, E->dim(deg - 1), F->dim(deg));
  kp.normalize();
  g = add(g, add(compose(dE, kp), compose(kp, dF)));
  HE = add(HE, compose(kp, f), -1);
  HF = add(HF, compose(f, kp), -1);

  return {E, F, f, g, HE, HF};
}

}  // namespace htt
