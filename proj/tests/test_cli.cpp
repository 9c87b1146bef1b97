#include <catch_amalgamated.hpp>

#include "cli.hpp"

#include <sstream>

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = htt::cli::run(std::move(args), in, out, err);
  return {code, out.str(), err.str()};
}

std::string input(const std::string& name) { return std::string(HTT_INPUTS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("trees enumerate lists n^(n-2) trees") {
  auto r = run_cli({"trees", "enumerate", "4"});
  REQUIRE(r.code == 0);
  auto doc = htt::Json::parse(r.out);
  CHECK(doc["count"] == 16);
  CHECK(doc["trees"].size() == 16);
  CHECK(htt::Json::parse(run_cli({"trees", "enumerate", "1"}).out)["count"] == 1);
}

TEST_CASE("complex validate reports cohomology and rejects d^2 != 0") {
  auto r = run_cli({"complex", "validate", input("zero_complex.json")});
  CHECK(r.code == 0);
  CHECK(htt::Json::parse(r.out)["ok"] == true);
  r = run_cli({"complex", "validate", input("complex.json")});
  CHECK(r.code == 0);
  auto bad = run_cli({"complex", "validate", input("bad_complex.json")});
  CHECK(bad.code == 1);
  CHECK(htt::Json::parse(bad.out)["ok"] == false);
}

TEST_CASE("verifiers are deterministic under a fixed seed") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"morphism", "verify", input("morphism.json"), "--seed", "5", "--trials", "8"},
           {"voronov", "brackets", input("voronov.json"), "--seed", "5"},
           {"equiv", "cylinder", input("equivalence.json")},
           {"structure", "minimal-model", input("massey.json")}}) {
    auto a = run_cli(args), b = run_cli(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("doubling U_2 exits 1 with an arity-2 counterexample") {
  auto r = run_cli({"morphism", "verify", input("morphism_tampered.json")});
  CHECK(r.code == 1);
  auto doc = htt::Json::parse(r.out);
  CHECK(doc["ok"] == false);
  CHECK(doc["morphism"]["counterexample"]["arity"] == 2);
  CHECK(run_cli({"morphism", "verify", input("morphism.json")}).code == 0);
}

TEST_CASE("input errors exit 2 with a location") {
  auto r = run_cli({"complex", "validate", input("malformed.json")});
  CHECK(r.code == 2);
  CHECK(r.err.find("malformed JSON") != std::string::npos);
  r = run_cli({"complex", "validate"},
              R"({"basis": [{"degree": -1, "names": ["a"]}, {"degree": 0, "names": ["b"]}],
                  "differential": [{"degree": -1, "matrix": [["1", "2"]]}]})");
  CHECK(r.code == 2);
  CHECK(r.err.find("/differential/0/matrix/0") != std::string::npos);
  CHECK(run_cli({"no-such-command"}).code == 2);
  CHECK(run_cli({"complex", "validate", input("does_not_exist.json")}).code == 2);
  CHECK(run_cli({"trees", "enumerate", "0"}).code == 2);
}

TEST_CASE("stdin pipelines: encode then decode returns the structure") {
  auto enc = run_cli({"structure", "encode", input("structure.json")});
  REQUIRE(enc.code == 0);
  auto dec = run_cli({"structure", "decode"}, enc.out);
  REQUIRE(dec.code == 0);
  std::ifstream fh(input("structure.json"));
  CHECK(htt::Json::parse(dec.out) == htt::Json::parse(fh));
  auto ver = run_cli({"structure", "verify"}, dec.out);
  CHECK(ver.code == 0);

  auto mm = run_cli({"structure", "minimal-model", input("massey.json")});
  auto ce = run_cli({"structure", "ce-class"}, mm.out);
  CHECK(ce.code == 0);
  CHECK(htt::Json::parse(ce.out)["vanishes"] == false);
}
