#include <catch_amalgamated.hpp>

#include "htt/algebra.hpp"
#include "htt/random.hpp"
#include "htt/random_element.hpp"

#include <tuple>

using namespace htt;

namespace {

using Tensor3 = std::map<std::tuple<Monomial, Monomial, Monomial>, Rational>;

void add_to(Tensor3& t, const Monomial& a, const Monomial& b, const Monomial& c, const Rational& q) {
  auto& slot = t[{a, b, c}];
  slot += q;
  if (is_zero(slot)) t.erase({a, b, c});
}

Element monomial_element(const TablePtr& t, const Monomial& m) {
  Element e(t);
  e.add_term(m, 1);
  return e;
}

// (Delta ⊗ id) Delta and (id ⊗ Delta) Delta; Delta has degree 0, so no Koszul signs appear.
Tensor3 coproduct_left(const Element& a) {
  Tensor3 out;
  for (const auto& [lr, q] : coproduct(a).terms)
    for (const auto& [ll, q2] : coproduct(monomial_element(a.table, lr.first)).terms)
      add_to(out, ll.first, ll.second, lr.second, q * q2);
  return out;
}

Tensor3 coproduct_right(const Element& a) {
  Tensor3 out;
  for (const auto& [lr, q] : coproduct(a).terms)
    for (const auto& [rr, q2] : coproduct(monomial_element(a.table, lr.second)).terms)
      add_to(out, lr.first, rr.first, rr.second, q * q2);
  return out;
}

struct Fixture {
  Rng rng{2024};
  std::vector<TablePtr> tables;
  Fixture() {
    for (int k = 0; k < 6; ++k) tables.push_back(make_table(share(random_complex(rng, -2, 1, 2))));
  }
  const TablePtr& table(int k) { return tables[static_cast<std::size_t>(k) % tables.size()]; }
};

int deg(const Element& a) { return *a.degree(); }

}  // namespace

TEST_CASE("generator degrees and biweights") {
  Complex c;
  c.basis[-1] = {"a"};
  c.basis[0] = {"b"};
  c.basis[2] = {"z"};
  auto t = make_table(share(c));
  for (const auto& [name, base] : std::vector<std::pair<std::string, int>>{{"a", -1}, {"b", 0}, {"z", 2}}) {
    const auto xi = t->id(Side::FromE, name);
    const auto theta = t->id(Side::FromEDual, name);
    CHECK(t->degree(xi) == base + 1);
    CHECK(t->degree(theta) == -base + 1);
    CHECK((*t)[xi].biweight == Biweight{0, 1});
    CHECK((*t)[theta].biweight == Biweight{1, 0});
    CHECK(t->partner(xi) == theta);
  }
  // Canonical order is by degree first.
  for (std::uint32_t i = 1; i < t->size(); ++i) CHECK(t->degree(i - 1) <= t->degree(i));
  CHECK_THROWS(t->id(Side::FromE, "missing"));
}

TEST_CASE("product is graded commutative and associative") {
  Fixture fx;
  for (int trial = 0; trial < 300; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_homogeneous(fx.rng, t, 3, 3);
    Element b = random_homogeneous(fx.rng, t, 3, 3);
    Element c = random_homogeneous(fx.rng, t, 3, 3);
    CHECK(product(a, b) == Rational(sign_of_parity(deg(a) * deg(b))) * product(b, a));
    CHECK(product(product(a, b), c) == product(a, product(b, c)));
    Element ab = product(a, b);
    if (!ab.is_zero()) {
      CHECK(ab.degree() == deg(a) + deg(b));
    }
    CHECK(product(scalar(t, 1), a) == a);
  }
}

TEST_CASE("odd generators square to zero and words normalize with their Koszul sign") {
  Fixture fx;
  for (int k = 0; k < 6; ++k) {
    const auto& t = fx.table(k);
    for (std::uint32_t x = 0; x < t->size(); ++x) {
      Element g = generator_element(t, x);
      if (t->odd(x)) CHECK(product(g, g).is_zero());
      else CHECK_FALSE(product(g, g).is_zero());
    }
    for (int trial = 0; trial < 50; ++trial) {
      Monomial w;
      const int len = uniform_int(fx.rng, 1, 4);
      for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint32_t>(uniform_int(fx.rng, 0, static_cast<int>(t->size()) - 1)));
      Element from_word(t);
      from_word.add_word(w, 1);
      Element from_product = scalar(t, 1);
      for (auto g : w) from_product = product(from_product, generator_element(t, g));
      CHECK(from_word == from_product);
    }
  }
}

TEST_CASE("degree and biweight are additive under products") {
  Fixture fx;
  for (int trial = 0; trial < 200; ++trial) {
    const auto& t = fx.table(trial);
    auto a = random_monomial(fx.rng, *t, 3);
    auto b = random_monomial(fx.rng, *t, 3);
    if (!a || !b) continue;
    auto [s, ab] = multiply_monomials(*t, *a, *b);
    if (s == 0) continue;
    CHECK(monomial_degree(*t, ab) == monomial_degree(*t, *a) + monomial_degree(*t, *b));
    const auto wa = monomial_biweight(*t, *a), wb = monomial_biweight(*t, *b), wab = monomial_biweight(*t, ab);
    CHECK(wab.first == wa.first + wb.first);
    CHECK(wab.second == wa.second + wb.second);
  }
}

TEST_CASE("enumerated monomials are exactly those of the requested degree and biweight") {
  Fixture fx;
  for (int k = 0; k < 6; ++k) {
    const auto& t = fx.table(k);
    for (int trial = 0; trial < 40; ++trial) {
      auto m = random_monomial(fx.rng, *t, 3);
      if (!m) continue;
      const int d = monomial_degree(*t, *m);
      const auto w = monomial_biweight(*t, *m);
      const auto all = enumerate_monomials(*t, d, w);
      CHECK(std::find(all.begin(), all.end(), *m) != all.end());
      for (const auto& x : all) {
        CHECK(monomial_degree(*t, x) == d);
        CHECK(monomial_biweight(*t, x) == w);
        Monomial copy = x;
        CHECK(normalize_word(*t, copy) == 1);
        CHECK(copy == x);
      }
    }
  }
}

TEST_CASE("coproduct is coassociative, counital and multiplicative") {
  Fixture fx;
  for (int trial = 0; trial < 150; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_homogeneous(fx.rng, t, 2, 3);
    Element b = random_homogeneous(fx.rng, t, 2, 3);
    CHECK(coproduct_left(a) == coproduct_right(a));

    Element left_counit(t), right_counit(t);
    for (const auto& [lr, q] : coproduct(a).terms) {
      if (lr.first.empty()) left_counit.add_term(lr.second, q);
      if (lr.second.empty()) right_counit.add_term(lr.first, q);
    }
    CHECK(left_counit == a);
    CHECK(right_counit == a);

    CHECK(coproduct(product(a, b)) == tensor_product(coproduct(a), coproduct(b)));
  }
}

TEST_CASE("pairing of dual and primal generators") {
  Fixture fx;
  for (int k = 0; k < 6; ++k) {
    const auto& t = *fx.table(k);
    for (std::uint32_t x = 0; x < t.size(); ++x)
      for (std::uint32_t y = 0; y < t.size(); ++y) {
        const Rational v = pairing(t, x, y);
        if (t[x].side == t[y].side) {
          CHECK(is_zero(v));
          continue;
        }
        const bool partners = t.partner(x) == y;
        if (t[x].side == Side::FromEDual) CHECK(v == Rational(partners ? 1 : 0));
        // Mirrored order: <x, y> = -(-1)^{|x||y|} <y, x>.
        CHECK(v == -sign_of_parity(t.degree(x) * t.degree(y)) * pairing(t, y, x));
      }
  }
}

TEST_CASE("weight components split an element") {
  Fixture fx;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& t = fx.table(trial);
    Element a = random_homogeneous(fx.rng, t, 4, 3);
    Element sum(t);
    for (const auto& w : a.biweights()) sum += weight_component(a, w);
    CHECK(sum == a);
    Element by_k(t);
    std::set<int> ks;
    for (const auto& w : a.biweights()) ks.insert(w.second - w.first);
    for (int k : ks) {
      Element part = w_component(a, k);
      for (const auto& w : part.biweights()) CHECK(w.second - w.first == k);
      by_k += part;
    }
    CHECK(by_k == a);
  }
}
