#pragma once

// Seeded corpora shared by the unit tests and the acceptance runner.

#include "htt/bracket.hpp"
#include "htt/transfer.hpp"
#include "oracle/direct_transfer.hpp"
#include "support/structures.hpp"

#include <vector>

namespace htt::testing {

/// Random equivalences out of random complexes concentrated in degrees [-2, 0].
inline std::vector<HomotopyEquivalence> equivalence_corpus(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<HomotopyEquivalence> out;
  for (int k = 0; k < count; ++k) {
    auto E = share(random_complex(rng, -2, 0, 3));
    out.push_back(random_equivalence(rng, E, -2, 0, 1));
  }
  return out;
}

/// Structure transported along a change of basis: l'(y..) = to l(from y, ..).
inline LinftyStructure transport_structure(const LinftyStructure& s, const Rebasis& r) {
  LinftyStructure out{r.complex, {}};
  const BasisIndex bi(*r.complex), src(*s.complex);
  for (const auto& [k, table] : s.brackets)
    for (const auto& idx : antisymmetric_tuples(bi, k)) {
      std::vector<Vec> args;
      for (auto i : idx) args.push_back(oracle::apply_map(r.from, unit_vec(bi.size(), i)));
      Vec v = oracle::apply_map(r.to, bracket_on_vectors(s, src, args));
      if (!vec_is_zero(v)) set_bracket(out, bi, idx, v);
    }
  return out;
}

/// Lie algebras tensored with a small dg algebra, then gauge transformed so
/// that higher brackets appear. Every entry is a verified L∞ structure.
inline std::vector<LinftyStructure> gauged_structures(std::uint64_t seed, int count) {
  Rng rng(seed);
  const auto algs = seed_lie_algebras();
  std::vector<LinftyStructure> out;
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const auto& g = algs[static_cast<std::size_t>(1 + k % 3)];
    auto seed_structure = lie_tensor_seed(g, uniform_int(rng, 1, 2), uniform_int(rng, 0, 1) == 1);
    auto ctx = make_context(seed_structure.complex);
    Element nu = encode_structure(seed_structure.structure, ctx.table);
    Element h = random_gauge_generator(rng, ctx.table, 3, 2);
    out.push_back(decode_structure(gauge_exp(ctx, h, nu), seed_structure.complex));
  }
  return out;
}

struct MasseyInstance {
  LinftyStructure structure;
  bool unital;
  bool rebased;
};

/// The 2-dim and sl2 algebras tensored with the Massey dg algebra, with and
/// without unit, the 2-dim ones also in a random basis. Heisenberg is left out since
/// its double brackets vanish.
inline std::vector<MasseyInstance> massey_structures(std::uint64_t seed, int count) {
  Rng rng(seed);
  const auto algs = seed_lie_algebras();
  // (algebra, unital, rebased)
  const std::vector<std::tuple<std::size_t, bool, bool>> plan{
      {1, false, false}, {3, false, false}, {1, true, false}, {3, true, false},
      {1, false, true},  {1, true, true}};
  std::vector<MasseyInstance> out;
  for (int k = 0; k < count; ++k) {
    const auto [alg, unital, rebased] = plan[static_cast<std::size_t>(k) % plan.size()];
    auto m = massey_dg_lie(algs[alg], random_nonzero_scalar(rng), random_nonzero_scalar(rng), unital);
    if (rebased)
      out.push_back({transport_structure(m.structure, random_rebasis(rng, m.complex, "r")), unital, true});
    else
      out.push_back({m.structure, unital, false});
  }
  return out;
}

/// A twisted context together with a Poisson-type generator pi.
struct DerivedInstance {
  ShiftedLieContext context;
  Element pi;
};

inline std::vector<DerivedInstance> derived_instances(std::uint64_t seed, int count) {
  Rng rng(seed);
  const auto algs = seed_lie_algebras();
  std::vector<DerivedInstance> out;
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const auto& g = algs[static_cast<std::size_t>(k) % algs.size()];
    auto seed_structure = lie_tensor_seed(g, 1 + k % 2, k % 3 == 0);
    auto ctx = make_context(seed_structure.complex);
    auto twisted = twist_context(ctx, encode_structure(seed_structure.structure, ctx.table));
    Element pi = triangular_poisson(twisted, random_bivector(rng, ctx.table, 3, 3));
    if (pi.is_zero()) continue;
    out.push_back({twisted, pi});
  }
  return out;
}

}  // namespace htt::testing
