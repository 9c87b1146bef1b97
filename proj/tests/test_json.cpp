#include <catch_amalgamated.hpp>

#include "htt/json_io.hpp"
#include "support/corpus.hpp"

using namespace htt;

namespace {

std::string where_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SchemaError& e) {
    return e.where;
  }
  return "<no error>";
}

Json small_complex_json() {
  return Json::parse(R"({"basis": [{"degree": -1, "names": ["a"]}, {"degree": 0, "names": ["b", "c"]}],
                         "differential": [{"degree": -1, "matrix": [["1"], ["0"]]}]})");
}

}  // namespace

TEST_CASE("rationals round-trip exactly") {
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    Rational q = random_scalar(rng) / random_nonzero_scalar(rng);
    CHECK(rational_from_json(rational_to_json(q)) == q);
  }
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK(rational_from_json(Json("-6/4")) == Rational(-3, 2));
  CHECK(where_of([] { rational_from_json(Json("1/0"), "/x"); }) == "/x");
  CHECK(where_of([] { rational_from_json(Json(0.5), "/y"); }) == "/y");
}

TEST_CASE("complexes, equivalences and structures round-trip byte for byte") {
  for (const auto& h : testing::equivalence_corpus(2, 20)) {
    const std::string text = equivalence_to_json(h).dump(2);
    const auto back = equivalence_from_json(Json::parse(text));
    CHECK(equivalence_to_json(back).dump(2) == text);
    CHECK(check_homotopy_equivalence(back).ok);
    CHECK(maps_equal(back.f, h.f));
    CHECK(maps_equal(back.H_E, h.H_E));
    const std::string ctext = complex_to_json(*h.E).dump();
    CHECK(complex_to_json(complex_from_json(Json::parse(ctext))).dump() == ctext);
  }
  for (const auto& s : testing::gauged_structures(3, 8)) {
    const std::string text = structure_to_json(s).dump(2);
    const auto back = structure_from_json(Json::parse(text));
    CHECK(structure_to_json(back).dump(2) == text);
    CHECK(back.brackets == s.brackets);
  }
}

TEST_CASE("elements and polynomials round-trip exactly") {
  Rng rng(4);
  for (const auto& s : testing::gauged_structures(4, 6)) {
    auto t = make_table(s.complex);
    for (int k = 0; k < 20; ++k) {
      Element a = random_homogeneous(rng, t, 4, 4);
      CHECK(element_from_json(element_to_json(a), t) == a);
    }
    auto ctx = make_context(s.complex);
    Element nu = encode_structure(s, t);
    Element h = testing::random_gauge_generator(rng, t, 3, 2);
    auto path = gauge_path(ctx, h, nu);
    auto back = poly_from_json(poly_to_json(path), t);
    REQUIRE(back.coeffs.size() == path.coeffs.size());
    for (std::size_t i = 0; i < path.coeffs.size(); ++i) CHECK(back.coeffs[i] == path.coeffs[i]);
  }
}

TEST_CASE("element words in any order are normalized with their sign") {
  auto c = share(complex_from_json(small_complex_json()));
  auto t = make_table(c);
  // xi:a has degree 0, theta:b and theta:c have degree 1 (odd).
  auto ab = element_from_json(Json::parse(R"([{"coefficient": "2", "monomial": ["theta:b", "theta:c"]}])"), t);
  auto ba = element_from_json(Json::parse(R"([{"coefficient": "2", "monomial": ["theta:c", "theta:b"]}])"), t);
  CHECK(ab == -ba);
  auto sq = element_from_json(Json::parse(R"([{"coefficient": "1", "monomial": ["theta:b", "theta:b"]}])"), t);
  CHECK(sq.is_zero());
}

TEST_CASE("schema violations report their location") {
  auto bad_shape = small_complex_json();
  bad_shape["differential"][0]["matrix"] = Json::parse(R"([["1", "2"]])");
  CHECK(where_of([&] { complex_from_json(bad_shape); }).rfind("/differential/0/matrix", 0) == 0);

  auto dup = small_complex_json();
  dup["basis"][1]["names"][0] = "a";
  CHECK(where_of([&] { complex_from_json(dup); }) == "/basis/1/names/0");

  auto extra = small_complex_json();
  extra["unexpected"] = 1;
  CHECK(where_of([&] { complex_from_json(extra); }) != "<no error>");

  auto missing = small_complex_json();
  missing.erase("basis");
  CHECK(where_of([&] { complex_from_json(missing); }) != "<no error>");

  auto t = make_table(share(complex_from_json(small_complex_json())));
  CHECK(where_of([&] {
          element_from_json(Json::parse(R"([{"coefficient": "1", "monomial": ["xi:zz"]}])"), t);
        }) == "/0/monomial/0");
  CHECK(where_of([&] {
          element_from_json(Json::parse(R"([{"coefficient": "1", "monomial": ["a"]}])"), t);
        }) == "/0/monomial/0");

  auto h = testing::equivalence_corpus(5, 1).front();
  auto j = equivalence_to_json(h);
  j["f"]["shift"] = 1;
  CHECK(where_of([&] { equivalence_from_json(j); }).rfind("/f", 0) == 0);

  CHECK(where_of([] { parse_json_text("{\"basis\": [", "input"); }).rfind("input@", 0) == 0);
}

TEST_CASE("structures with wrong bracket degrees or duplicate tuples are rejected") {
  auto j = Json::parse(R"({"complex": {"basis": [{"degree": 0, "names": ["x", "y"]}]},
                           "brackets": [{"inputs": ["x", "y"], "output": [{"name": "x", "coefficient": "1"}]}]})");
  CHECK_NOTHROW(structure_from_json(j));
  auto wrong = j;
  wrong["complex"]["basis"][0]["degree"] = 1;
  wrong["complex"]["basis"].push_back(Json::parse(R"({"degree": 0, "names": ["z"]})"));
  wrong["brackets"][0]["output"][0]["name"] = "z";
  CHECK_THROWS_AS(structure_from_json(wrong), SchemaError);
  auto dup = j;
  dup["brackets"].push_back(Json::parse(R"({"inputs": ["y", "x"], "output": []})"));
  CHECK_THROWS_AS(structure_from_json(dup), SchemaError);
}
