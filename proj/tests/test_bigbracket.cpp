#include <catch_amalgamated.hpp>

#include "htt/bracket.hpp"
#include "htt/random.hpp"
#include "htt/random_element.hpp"
#include "htt/verify.hpp"
#include "oracle/bracket_biderivation.hpp"
#include "support/corpus.hpp"

using namespace htt;

namespace {

struct Fixture {
  Rng rng{31337};
  std::vector<TablePtr> tables;
  Fixture() {
    for (int k = 0; k < 8; ++k) tables.push_back(make_table(share(random_complex(rng, -2, 1, 2))));
  }
  const TablePtr& table(int k) { return tables[static_cast<std::size_t>(k) % tables.size()]; }
};

int deg(const Element& a) { return *a.degree(); }

Rational koszul(const Element& a, const Element& b) { return sign_of_parity(deg(a) * deg(b)); }

}  // namespace

TEST_CASE("bracket has degree -2 and biweight (-1,-1)") {
  Fixture fx;
  int nonzero = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_bihomogeneous(fx.rng, t, 2, 3);
    Element b = random_bihomogeneous(fx.rng, t, 2, 3);
    Element c = big_bracket(a, b);
    if (c.is_zero()) continue;
    ++nonzero;
    const auto wa = *a.biweights().begin(), wb = *b.biweights().begin();
    CHECK(c.degree() == deg(a) + deg(b) - 2);
    CHECK(c.biweights() == std::set<Biweight>{{wa.first + wb.first - 1, wa.second + wb.second - 1}});
  }
  CHECK(nonzero > 100);
}

TEST_CASE("bracket is graded antisymmetric and satisfies Jacobi and Leibniz") {
  Fixture fx;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_homogeneous(fx.rng, t, 2, 3);
    Element b = random_homogeneous(fx.rng, t, 2, 3);
    Element c = random_homogeneous(fx.rng, t, 2, 3);
    CHECK(big_bracket(a, b) == -(koszul(a, b) * big_bracket(b, a)));
    // {a, {b, c}} = {{a, b}, c} + (-1)^{|a||b|} {b, {a, c}}
    CHECK(big_bracket(a, big_bracket(b, c)) ==
          big_bracket(big_bracket(a, b), c) + koszul(a, b) * big_bracket(b, big_bracket(a, c)));
    // {a, bc} = {a, b} c + (-1)^{|a||b|} b {a, c}
    CHECK(big_bracket(a, product(b, c)) ==
          product(big_bracket(a, b), c) + koszul(a, b) * product(b, big_bracket(a, c)));
  }
}

TEST_CASE("bracket agrees with the biderivation extension of the pairing") {
  Fixture fx;
  int nonzero = 0;
  for (int trial = 0; trial < 600; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_homogeneous(fx.rng, t, 3, 3);
    Element b = random_homogeneous(fx.rng, t, 3, 3);
    Element expected = oracle::bracket_biderivation(a, b);
    Element got = big_bracket(a, b);
    CHECK(got == expected);
    nonzero += !got.is_zero();
  }
  CHECK(nonzero >= 300);
}

TEST_CASE("bracket on generators is the pairing and the unit is central") {
  Fixture fx;
  for (int k = 0; k < 8; ++k) {
    const auto& t = fx.table(k);
    for (std::uint32_t x = 0; x < t->size(); ++x) {
      CHECK(big_bracket(scalar(t, 1), generator_element(t, x)).is_zero());
      CHECK(big_bracket(generator_element(t, x), scalar(t, 3)).is_zero());
      for (std::uint32_t y = 0; y < t->size(); ++y)
        CHECK(big_bracket(generator_element(t, x), generator_element(t, y)) == scalar(t, pairing(*t, x, y)));
    }
  }
}

TEST_CASE("the differential element squares to zero and encodes d") {
  Rng rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    auto E = share(random_complex(rng, -2, 2, 3));
    auto ctx = make_context(E);
    const auto& t = ctx.table;
    INFO("trial " << trial);
    CHECK(big_bracket(ctx.dhat, ctx.dhat).is_zero());
    CHECK((ctx.dhat.is_zero() || ctx.dhat.biweights() == std::set<Biweight>{{1, 1}}));
    CHECK((ctx.dhat.is_zero() || ctx.dhat.degree() == 3));
    for (int d : E->degrees()) {
      const Matrix m = E->block(d);
      for (std::size_t col = 0; col < E->dim(d); ++col) {
        Element expected(t);
        for (std::size_t r = 0; r < m.rows(); ++r)
          expected.add_term({t->id(Side::FromE, d + 1, r)}, m(r, col));
        CHECK(big_bracket(ctx.dhat, generator_element(t, t->id(Side::FromE, d, col))) == expected);
      }
    }
    for (int k = 0; k < 5; ++k) {
      Element a = random_homogeneous(rng, t, 3, 3);
      CHECK(differential(ctx, differential(ctx, a)).is_zero());
    }
  }
}

TEST_CASE("W_k is closed under the bracket") {
  Fixture fx;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_bihomogeneous(fx.rng, t, 2, 3);
    Element b = random_bihomogeneous(fx.rng, t, 2, 3);
    const auto wa = *a.biweights().begin(), wb = *b.biweights().begin();
    const int k = (wa.second - wa.first) + (wb.second - wb.first);
    for (const auto& w : big_bracket(a, b).biweights()) CHECK(w.second - w.first == k);
  }
}

TEST_CASE("encoded structures are Maurer-Cartan and twisting shifts the equation") {
  Rng rng(77);
  for (const auto& s : testing::gauged_structures(77, 8)) {
    auto ctx = make_context(s.complex);
    const Element mu = encode_structure(s, ctx.table);
    REQUIRE(is_mc(ctx, mu));
    auto tw = twist_context(ctx, mu);
    // mc_residual in the twisted context equals the residual of nu + mu.
    for (int k = 0; k < 10; ++k) {
      Element nu = random_of_degree(rng, ctx.table, 3, 3, 4, [](Biweight w) { return w.first >= 2 && w.second == 1; });
      CHECK(mc_residual(tw, nu) == mc_residual(ctx, nu + mu));
      CHECK(is_mc(tw, nu) == is_mc(ctx, nu + mu));
    }
    // Gauge images of mu differ from mu by Maurer-Cartan elements of the twist.
    for (int k = 0; k < 3; ++k) {
      Element h = testing::random_gauge_generator(rng, ctx.table, 3, 2);
      Element moved = gauge_exp(ctx, h, mu) - mu;
      CHECK(is_mc(tw, moved));
    }
  }
  auto ctx = make_context(testing::gauged_structures(78, 1).front().complex);
  Element bad = random_of_weight(rng, ctx.table, 3, {2, 1}, 2);
  if (!is_mc(ctx, bad)) CHECK_THROWS(twist_context(ctx, bad));
}

TEST_CASE("gauge action preserves Maurer-Cartan elements along the whole path") {
  Rng rng(88);
  int nontrivial = 0;
  for (const auto& s : testing::gauged_structures(88, 10)) {
    auto ctx = make_context(s.complex);
    const Element nu = encode_structure(s, ctx.table);
    for (int k = 0; k < 3; ++k) {
      Element h = testing::random_gauge_generator(rng, ctx.table, 3, 2);
      PolyElement path = gauge_path(ctx, h, nu);
      CHECK(is_mc(ctx, gauge_exp(ctx, h, nu)));
      PolyElement hp{{h}};
      CHECK(gauge_path_check(ctx, path, hp).ok);
      if (path.coeffs.size() > 1) {
        ++nontrivial;
        PolyElement tampered = path;
        tampered.coeffs[1] += big_bracket(h, tampered.coeffs[1]) + tampered.coeffs[1];
        CHECK_FALSE(gauge_path_check(ctx, tampered, hp).ok);
      }
    }
  }
  CHECK(nontrivial >= 5);
}

TEST_CASE("gauge generators of left weight below 2 are rejected") {
  auto s = testing::gauged_structures(99, 1).front();
  auto ctx = make_context(s.complex);
  const Element nu = encode_structure(s, ctx.table);
  Rng rng(99);
  Element low = random_of_weight(rng, ctx.table, 2, {1, 1}, 2);
  REQUIRE_FALSE(low.is_zero());
  CHECK_THROWS_AS(gauge_exp(ctx, low, nu), std::invalid_argument);
  Element wrong_degree = random_of_weight(rng, ctx.table, 3, {2, 1}, 2);
  if (!wrong_degree.is_zero()) CHECK_THROWS_AS(gauge_exp(ctx, wrong_degree, nu), std::invalid_argument);
}

TEST_CASE("triangular Poisson elements solve the shifted Poisson equation") {
  Rng rng(111);
  int nonzero = 0;
  for (const auto& inst : testing::derived_instances(111, 10)) {
    CHECK(shifted_poisson_residual(inst.context, inst.pi).is_zero());
    nonzero += !inst.pi.is_zero();
    Element spoiled = inst.pi + random_of_weight(rng, inst.context.table, 3, {1, 2}, 2);
    if (!(spoiled == inst.pi)) CHECK_FALSE(shifted_poisson_residual(inst.context, spoiled).is_zero());
  }
  CHECK(nonzero == 10);
}
