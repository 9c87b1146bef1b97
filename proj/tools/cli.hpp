#pragma once

// Command-line front end: parses a JSON document, runs one library operation
// and writes canonical JSON. Exit codes: 0 ok, 1 violation found, 2 bad input.

#include "htt/cylinder.hpp"
#include "htt/json_io.hpp"
#include "htt/retract.hpp"
#include "htt/transfer.hpp"
#include "htt/trees.hpp"
#include "htt/verify.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace htt::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

struct Options {
  std::uint64_t seed = 1;
  int trials = 64;
  std::optional<int> max_arity;
  std::optional<int> twisted_max_arity;
  std::string out;
  std::string input = "-";
  int tree_size = 0;
};

struct Outcome {
  int code = kOk;
  Json report;
  std::string summary;
};

using Command = std::function<Outcome(const Options&, std::istream&)>;

namespace detail {

inline Json read_document(const Options& opt, std::istream& in) {
  std::string text;
  if (opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(opt.input, std::ios::binary);
    if (!file) throw SchemaError(opt.input, "cannot open input file");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  return parse_json_text(text, opt.input == "-" ? "<stdin>" : opt.input);
}

inline Json report_to_json(const CheckReport& r) {
  Json j{{"ok", r.ok}};
  if (!r.ok) j["message"] = r.message;
  return j;
}

inline Json counterexample_to_json(const Counterexample& c) {
  Json inputs = Json::array();
  for (const auto& x : c.inputs) inputs.push_back(element_to_json(x));
  return {{"arity", c.arity}, {"inputs", inputs}, {"difference", element_to_json(c.difference)}, {"reason", c.reason}};
}

inline Json verify_to_json(const VerifyReport& r, int max_arity) {
  Json j{{"ok", r.ok}, {"checked", r.checked}, {"max_arity", max_arity}};
  if (r.counterexample) j["counterexample"] = counterexample_to_json(*r.counterexample);
  return j;
}

inline Json element_doc(const Element& a) {
  return {{"complex", complex_to_json(*a.table->complex())}, {"element", element_to_json(a)}};
}

inline std::string pass_fail(bool ok) { return ok ? "ok" : "VIOLATION"; }

/// Context named by a document: {"structure": s} twists by the encoding of
/// s; otherwise {"complex": c} with an optional {"twist": element}.
inline ShiftedLieContext context_from(const Json& doc) {
  if (doc.contains("structure")) {
    if (doc.contains("complex") || doc.contains("twist"))
      throw SchemaError("", "give either 'structure' or 'complex' (with optional 'twist'), not both");
    const LinftyStructure s = structure_from_json(doc["structure"], "/structure");
    ShiftedLieContext ctx = make_context(s.complex);
    return twist_context(ctx, encode_structure(s, ctx.table));
  }
  ShiftedLieContext ctx = make_context(share(complex_from_json(htt::detail::field(doc, "complex", ""), "/complex")));
  if (doc.contains("twist")) ctx = twist_context(ctx, element_from_json(doc["twist"], ctx.table, "/twist"));
  return ctx;
}

inline Json tree_to_json(const LabeledTree& t) {
  Json edges = Json::array();
  for (const auto& [i, j] : t.edges) edges.push_back({i, j});
  Json out{{"n", t.n}, {"edges", edges}};
  if (t.mark) out["mark"] = {{"edge", t.mark->first}, {"kind", t.mark->second == EdgeMark::Dotted ? "dotted" : "wavy"}};
  return out;
}

inline LabeledTree tree_from_json(const Json& j, const std::string& at) {
  htt::detail::only_fields(j, {"n", "edges", "mark"}, at);
  const int n = htt::detail::as_int(htt::detail::field(j, "n", at), at + "/n");
  if (n < 1) throw SchemaError(at + "/n", "tree must have at least one vertex");
  const auto& edges = htt::detail::as_array(htt::detail::field(j, "edges", at), at + "/edges");
  std::vector<std::pair<int, int>> es;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string here = at + "/edges/" + std::to_string(k);
    if (!edges[k].is_array() || edges[k].size() != 2) throw SchemaError(here, "edge must be a pair of vertices");
    const int a = htt::detail::as_int(edges[k][0], here + "/0"), b = htt::detail::as_int(edges[k][1], here + "/1");
    if (a < 1 || a > n || b < 1 || b > n || a == b) throw SchemaError(here, "edge endpoints must be distinct vertices in 1..n");
    es.emplace_back(a, b);
  }
  if (static_cast<int>(es.size()) != n - 1) throw SchemaError(at + "/edges", "a tree on n vertices has n-1 edges");
  // Connectivity: union-find over the vertices.
  std::vector<int> root(static_cast<std::size_t>(n) + 1);
  for (int v = 0; v <= n; ++v) root[static_cast<std::size_t>(v)] = v;
  std::function<int(int)> find = [&](int v) {
    return root[static_cast<std::size_t>(v)] == v ? v : root[static_cast<std::size_t>(v)] = find(root[static_cast<std::size_t>(v)]);
  };
  for (const auto& [a, b] : es) {
    if (find(a) == find(b)) throw SchemaError(at + "/edges", "edges contain a cycle");
    root[static_cast<std::size_t>(find(a))] = find(b);
  }
  LabeledTree t = canonical_tree(n, es);
  if (j.contains("mark")) {
    const std::string here = at + "/mark";
    htt::detail::only_fields(j["mark"], {"edge", "kind"}, here);
    const int e = htt::detail::as_int(htt::detail::field(j["mark"], "edge", here), here + "/edge");
    if (e < 0 || e >= static_cast<int>(t.edges.size())) throw SchemaError(here + "/edge", "no such edge");
    const std::string kind = htt::detail::as_string(htt::detail::field(j["mark"], "kind", here), here + "/kind");
    if (kind != "dotted" && kind != "wavy") throw SchemaError(here + "/kind", "kind must be 'dotted' or 'wavy'");
    t.mark = std::make_pair(static_cast<std::size_t>(e), kind == "dotted" ? EdgeMark::Dotted : EdgeMark::Wavy);
  }
  return t;
}

inline std::vector<Element> elements_from_json(const Json& j, const TablePtr& t, const std::string& at) {
  htt::detail::as_array(j, at);
  std::vector<Element> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(element_from_json(j[k], t, at + "/" + std::to_string(k)));
  return out;
}

}  // namespace detail

// complex validate: {"basis", "differential"} -> {"ok", "dimensions", "cohomology"}
inline Outcome complex_validate(const Options& opt, std::istream& in) {
  const Complex c = complex_from_json(detail::read_document(opt, in));
  const CheckReport r = validate_complex(c);
  Json rep = detail::report_to_json(r);
  Json dims = Json::array();
  for (int deg : c.degrees()) dims.push_back({{"degree", deg}, {"dim", c.dim(deg)}});
  rep["dimensions"] = dims;
  if (r) {
    const auto h = retract_to_cohomology(share(c));
    Json coh = Json::array();
    for (int deg : h.F->degrees()) coh.push_back({{"degree", deg}, {"dim", h.F->dim(deg)}});
    rep["cohomology"] = coh;
  }
  return {r ? kOk : kViolation, rep, "complex: " + (r ? std::string("valid") : r.message)};
}

// equiv check: equivalence -> {"ok", "message"?}
inline Outcome equiv_check(const Options& opt, std::istream& in) {
  const auto h = equivalence_from_json(detail::read_document(opt, in));
  const CheckReport r = check_homotopy_equivalence(h);
  return {r ? kOk : kViolation, detail::report_to_json(r), "homotopy equivalence: " + (r ? std::string("ok") : r.message)};
}

// equiv cylinder: equivalence -> both halves through the mapping cylinder, checked
inline Outcome equiv_cylinder(const Options& opt, std::istream& in) {
  const auto h = equivalence_from_json(detail::read_document(opt, in));
  const MappingCylinder m = mapping_cylinder(h);
  const CheckReport a = check_homotopy_equivalence(m.E_to_C), b = check_homotopy_equivalence(m.C_to_F);
  const bool pi_e = maps_equal(compose(m.E_to_C.g, m.E_to_C.f), identity_map(h.E));
  const bool pi_f = maps_equal(compose(m.C_to_F.f, m.C_to_F.g), identity_map(h.F));
  const bool ok = a.ok && b.ok && pi_e && pi_f;
  Json rep{{"cylinder", complex_to_json(*m.C)},
           {"E_to_C", equivalence_to_json(m.E_to_C)},
           {"C_to_F", equivalence_to_json(m.C_to_F)},
           {"checks",
            {{"E_to_C", detail::report_to_json(a)},
             {"C_to_F", detail::report_to_json(b)},
             {"p_E_i_E_identity", pi_e},
             {"p_F_i_F_identity", pi_f}}},
           {"ok", ok}};
  return {ok ? kOk : kViolation, rep, "mapping cylinder: " + detail::pass_fail(ok)};
}

// equiv retract: complex -> deformation retract onto cohomology
inline Outcome equiv_retract(const Options& opt, std::istream& in) {
  const Complex c = complex_from_json(detail::read_document(opt, in));
  if (auto r = validate_complex(c); !r) throw std::invalid_argument("equiv retract: " + r.message);
  const auto h = retract_to_cohomology(share(c));
  return {kOk, equivalence_to_json(h), "retract onto cohomology of dimension " + std::to_string(h.F->total_dim())};
}

// trees enumerate N -> all labeled trees in Prüfer order
inline Outcome trees_enumerate(const Options& opt, std::istream&) {
  if (opt.tree_size < 1 || opt.tree_size > 9) throw std::invalid_argument("trees enumerate: n must lie in 1..9");
  Json trees = Json::array();
  const auto all = enumerate_trees(opt.tree_size);
  for (const auto& t : all) trees.push_back(detail::tree_to_json(t));
  return {kOk, {{"n", opt.tree_size}, {"count", all.size()}, {"trees", trees}},
          std::to_string(all.size()) + " labeled trees on " + std::to_string(opt.tree_size) + " vertices"};
}

// trees eval: {"equivalence", "tree"?, "inputs"} -> {"complex", "element"};
// without "tree" the sum over all trees R_n is returned.
inline Outcome trees_eval(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const auto h = equivalence_from_json(htt::detail::field(doc, "equivalence", ""), "/equivalence");
  const TablePtr t = make_table(h.E);
  const auto xs = detail::elements_from_json(htt::detail::field(doc, "inputs", ""), t, "/inputs");
  if (xs.empty()) throw SchemaError("/inputs", "at least one input is required");
  Element out(t);
  if (doc.contains("tree")) {
    const LabeledTree tree = detail::tree_from_json(doc["tree"], "/tree");
    if (tree.n != static_cast<int>(xs.size())) throw SchemaError("/inputs", "number of inputs must match the tree size");
    const GradedMap gf = compose(h.g, h.f);
    out += tree_eval(tree, EdgeForms{&h.H_E, &gf}, xs);
  } else {
    out += tree_sum(h.H_E, xs);
  }
  return {kOk, detail::element_doc(out), "tree value with " + std::to_string(out.terms.size()) + " terms"};
}

// morphism verify: {"equivalence", "scale"?: [{"arity", "factor"}]} -> reports
// for the L∞ morphism equations of U and the R_n identity with twisted target.
inline Outcome morphism_verify(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const auto h = equivalence_from_json(htt::detail::field(doc, "equivalence", ""), "/equivalence");
  if (auto r = check_homotopy_equivalence(h); !r) throw std::invalid_argument("morphism verify: " + r.message);
  LinftyMorphism u = morphism_from_equivalence(h);
  if (doc.contains("scale")) {
    const auto& sc = htt::detail::as_array(doc["scale"], "/scale");
    for (std::size_t k = 0; k < sc.size(); ++k) {
      const std::string here = "/scale/" + std::to_string(k);
      htt::detail::only_fields(sc[k], {"arity", "factor"}, here);
      const int n = htt::detail::as_int(htt::detail::field(sc[k], "arity", here), here + "/arity");
      if (n < 1) throw SchemaError(here + "/arity", "arity must be positive");
      u.scale[n] = rational_from_json(htt::detail::field(sc[k], "factor", here), here + "/factor");
    }
  }
  const int top = opt.max_arity.value_or(3);
  const int twisted_top = opt.twisted_max_arity.value_or(4);
  if (top < 2 || twisted_top < 2) throw std::invalid_argument("morphism verify: arity bounds must be at least 2");
  const VerifyReport m = verify_linfty_morphism(u, top, opt.trials, opt.seed);
  VerifyReport tw;
  for (int n = 2; n <= twisted_top && tw.ok; ++n) {
    VerifyReport r = verify_prop21(h, n, opt.trials, opt.seed + static_cast<std::uint64_t>(n));
    tw.checked += r.checked;
    tw.ok = r.ok;
    tw.counterexample = r.counterexample;
  }
  const bool ok = m.ok && tw.ok;
  Json rep{{"ok", ok}, {"morphism", detail::verify_to_json(m, top)}, {"twisted", detail::verify_to_json(tw, twisted_top)},
           {"seed", opt.seed}, {"trials", opt.trials}};
  return {ok ? kOk : kViolation, rep,
          "morphism equations: " + detail::pass_fail(m.ok) + ", twisted identity: " + detail::pass_fail(tw.ok)};
}

// morphism push-mc: {"equivalence", "element"} -> {"complex", "element",
// "source_residual", "target_residual"}
inline Outcome morphism_push_mc(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const auto h = equivalence_from_json(htt::detail::field(doc, "equivalence", ""), "/equivalence");
  if (auto r = check_homotopy_equivalence(h); !r) throw std::invalid_argument("morphism push-mc: " + r.message);
  const LinftyMorphism u = morphism_from_equivalence(h);
  const Element nu = element_from_json(htt::detail::field(doc, "element", ""), u.source.table, "/element");
  const Element pushed = push_mc(u, nu, opt.max_arity);
  const Element rs = mc_residual(u.source, nu), rt = mc_residual(u.target, pushed);
  Json rep = detail::element_doc(pushed);
  rep["source_residual"] = element_to_json(rs);
  rep["target_residual"] = element_to_json(rt);
  const bool ok = !rs.is_zero() || rt.is_zero();
  return {ok ? kOk : kViolation, rep,
          std::string("pushforward: source ") + (rs.is_zero() ? "MC" : "not MC") + ", target " + (rt.is_zero() ? "MC" : "not MC")};
}

// structure encode: structure -> {"complex", "element"}
inline Outcome structure_encode(const Options& opt, std::istream& in) {
  const LinftyStructure s = structure_from_json(detail::read_document(opt, in));
  const Element nu = encode_structure(s, make_table(s.complex));
  return {kOk, detail::element_doc(nu), "encoded element with " + std::to_string(nu.terms.size()) + " terms"};
}

// structure decode: {"complex", "element"} -> structure
inline Outcome structure_decode(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const auto c = share(complex_from_json(htt::detail::field(doc, "complex", ""), "/complex"));
  const Element nu = element_from_json(htt::detail::field(doc, "element", ""), make_table(c), "/element");
  const LinftyStructure s = decode_structure(nu, c);
  return {kOk, structure_to_json(s), "decoded structure of maximal arity " + std::to_string(s.max_arity())};
}

// structure verify: structure -> higher Jacobi report
inline Outcome structure_verify(const Options& opt, std::istream& in) {
  const LinftyStructure s = structure_from_json(detail::read_document(opt, in));
  if (auto r = validate_complex(*s.complex); !r) throw std::invalid_argument("structure verify: " + r.message);
  const int top = opt.max_arity.value_or(jacobi_arity_bound(*s.complex));
  const JacobiReport r = verify_higher_jacobi(s, top);
  Json rep{{"ok", r.ok}, {"max_arity", top}};
  if (!r.ok) {
    const BasisIndex bi(*s.complex);
    auto name_of = [&](std::size_t g) { return s.complex->basis.at(bi.entries[g].first)[bi.entries[g].second]; };
    Json inputs = Json::array(), value = Json::array();
    for (auto g : r.inputs) inputs.push_back(name_of(g));
    for (std::size_t g = 0; g < r.value.size(); ++g)
      if (!is_zero(r.value[g])) value.push_back({{"name", name_of(g)}, {"coefficient", rational_to_json(r.value[g])}});
    rep["counterexample"] = {{"arity", r.arity}, {"inputs", inputs}, {"value", value}};
  }
  return {r.ok ? kOk : kViolation, rep, "higher Jacobi identities up to arity " + std::to_string(top) + ": " + detail::pass_fail(r.ok)};
}

// structure transfer: {"equivalence", "structure"} -> structure on F
inline Outcome structure_transfer(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const auto h = equivalence_from_json(htt::detail::field(doc, "equivalence", ""), "/equivalence");
  if (auto r = check_homotopy_equivalence(h); !r) throw std::invalid_argument("structure transfer: " + r.message);
  LinftyStructure s = structure_from_json(htt::detail::field(doc, "structure", ""), "/structure");
  if (!(*s.complex == *h.E)) throw SchemaError("/structure/complex", "structure must live on the source complex E");
  s.complex = h.E;
  const LinftyStructure out = transfer_structure(h, s);
  return {kOk, structure_to_json(out), "transferred structure of maximal arity " + std::to_string(out.max_arity())};
}

// structure minimal-model: structure -> transferred structure on cohomology
inline Outcome structure_minimal_model(const Options& opt, std::istream& in) {
  const LinftyStructure s = structure_from_json(detail::read_document(opt, in));
  if (auto r = validate_complex(*s.complex); !r) throw std::invalid_argument("structure minimal-model: " + r.message);
  const LinftyStructure out = minimal_model(s);
  return {kOk, structure_to_json(out), "minimal model on " + std::to_string(out.complex->total_dim()) + " generators"};
}

// structure ce-class: structure with zero differential -> class of l_3
inline Outcome structure_ce_class(const Options& opt, std::istream& in) {
  const LinftyStructure s = structure_from_json(detail::read_document(opt, in));
  const CEClassReport r = ce_class(s);
  Json rep{{"vanishes", r.vanishes}, {"cochains", r.cochains}, {"rank", r.rank}, {"augmented_rank", r.augmented_rank},
           {"complex", complex_to_json(*s.complex)}};
  if (r.primitive) rep["primitive"] = element_to_json(*r.primitive);
  return {kOk, rep, std::string("class of l_3: ") + (r.vanishes ? "vanishes" : "nonzero")};
}

// poisson check: {"structure", "element"} -> residual in the twisted context
inline Outcome poisson_check(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const ShiftedLieContext ctx = detail::context_from(doc);
  const Element pi = element_from_json(htt::detail::field(doc, "element", ""), ctx.table, "/element");
  const Element r = shifted_poisson_residual(ctx, pi);
  return {r.is_zero() ? kOk : kViolation, {{"ok", r.is_zero()}, {"residual", element_to_json(r)}},
          "shifted Poisson equation: " + detail::pass_fail(r.is_zero())};
}

// gauge exp: {"complex" | "structure", "twist"?, "element", "generator"} ->
// {"complex", "element", "path", "generator_path", "mc"}
inline Outcome gauge_exp_cmd(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const ShiftedLieContext ctx = detail::context_from(doc);
  const Element nu = element_from_json(htt::detail::field(doc, "element", ""), ctx.table, "/element");
  const Element h = element_from_json(htt::detail::field(doc, "generator", ""), ctx.table, "/generator");
  const PolyElement path = gauge_path(ctx, h, nu);
  const Element out = gauge_exp(ctx, h, nu);
  const bool source_mc = is_mc(ctx, nu), target_mc = is_mc(ctx, out);
  Json rep = detail::element_doc(out);
  rep["path"] = poly_to_json(path);
  PolyElement hp;
  if (!h.is_zero()) hp.coeffs.push_back(h);
  rep["generator_path"] = poly_to_json(hp);
  rep["mc"] = target_mc;
  if (doc.contains("structure")) {
    rep["structure"] = doc["structure"];
    rep.erase("complex");
  } else if (ctx.twist) {
    rep["twist"] = doc["twist"];
  }
  const bool ok = !source_mc || target_mc;
  return {ok ? kOk : kViolation, rep, std::string("gauge transform: ") + (target_mc ? "MC" : "not MC")};
}

// gauge path-check: {"complex" | "structure", "twist"?, "path", "generator_path"}
inline Outcome gauge_path_check_cmd(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const ShiftedLieContext ctx = detail::context_from(doc);
  const PolyElement m = poly_from_json(htt::detail::field(doc, "path", ""), ctx.table, "/path");
  const PolyElement h = poly_from_json(htt::detail::field(doc, "generator_path", ""), ctx.table, "/generator_path");
  const CheckReport r = gauge_path_check(ctx, m, h);
  return {r ? kOk : kViolation, detail::report_to_json(r), "gauge path: " + (r ? std::string("ok") : r.message)};
}

// voronov brackets: {"complex" | "structure", "twist"?, "generator", "inputs"?}
// -> identity check on random inputs, and l_n(inputs) when inputs are given.
inline Outcome voronov_brackets_cmd(const Options& opt, std::istream& in) {
  const Json doc = detail::read_document(opt, in);
  const ShiftedLieContext ctx = detail::context_from(doc);
  const Element pi = element_from_json(htt::detail::field(doc, "generator", ""), ctx.table, "/generator");
  const DerivedBrackets l = voronov_brackets(ctx, pi);
  const int top = opt.max_arity.value_or(3);
  const VerifyReport r = verify_derived_brackets(l, ctx.table, top, opt.trials, opt.seed);
  Json rep = detail::verify_to_json(r, top);
  if (doc.contains("inputs")) {
    const auto as = detail::elements_from_json(doc["inputs"], ctx.table, "/inputs");
    for (std::size_t k = 0; k < as.size(); ++k)
      for (const auto& w : as[k].biweights())
        if (w.second != 0) throw SchemaError("/inputs/" + std::to_string(k), "inputs must have biweight (*,0)");
    rep["value"] = element_to_json(l(as));
  }
  return {r.ok ? kOk : kViolation, rep, "derived bracket identities up to arity " + std::to_string(top) + ": " + detail::pass_fail(r.ok)};
}

/// Parses argv, runs the command and writes the report. Never throws.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact homotopy transfer toolkit", "htt"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for randomized verifiers");
  app.add_option("--trials", opt.trials, "random trials per arity")->check(CLI::PositiveNumber);
  app.add_option("--max-arity", opt.max_arity, "arity bound (morphism: 3, voronov: 3, structure: degree bound)");
  app.add_option("--twisted-max-arity", opt.twisted_max_arity, "arity bound for the twisted-target identity (4)");
  app.add_option("--out", opt.out, "write JSON here instead of stdout");

  Command selected;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, Command cmd) {
    CLI::App* sub = group->add_subcommand(name, help);
    sub->add_option("input", opt.input, "JSON input file, '-' for stdin");
    sub->callback([&selected, cmd] { selected = cmd; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  CLI::App* complex = group("complex", "cochain complexes");
  leaf(complex, "validate", "check shapes and d^2 = 0", complex_validate);
  CLI::App* equiv = group("equiv", "homotopy equivalences");
  leaf(equiv, "check", "check the homotopy equivalence identities", equiv_check);
  leaf(equiv, "cylinder", "factor through the mapping cylinder", equiv_cylinder);
  leaf(equiv, "retract", "deformation retract onto cohomology", equiv_retract);
  CLI::App* trees = group("trees", "labeled tree operators");
  CLI::App* en = trees->add_subcommand("enumerate", "list labeled trees on n vertices");
  en->add_option("n", opt.tree_size, "number of vertices")->required();
  en->callback([&selected] { selected = trees_enumerate; });
  leaf(trees, "eval", "evaluate a tree (or R_n) on inputs", trees_eval);
  CLI::App* morphism = group("morphism", "the tree-sum L-infinity morphism");
  leaf(morphism, "verify", "randomized check of the morphism equations", morphism_verify);
  leaf(morphism, "push-mc", "push a Maurer-Cartan element forward", morphism_push_mc);
  CLI::App* structure = group("structure", "L-infinity structures");
  leaf(structure, "encode", "structure to Maurer-Cartan element", structure_encode);
  leaf(structure, "decode", "Maurer-Cartan element to structure", structure_decode);
  leaf(structure, "verify", "check the higher Jacobi identities", structure_verify);
  leaf(structure, "transfer", "transfer along a homotopy equivalence", structure_transfer);
  leaf(structure, "minimal-model", "transfer to cohomology", structure_minimal_model);
  leaf(structure, "ce-class", "obstruction class of l_3", structure_ce_class);
  CLI::App* poisson = group("poisson", "shifted Poisson structures");
  leaf(poisson, "check", "residual of the shifted Poisson equation", poisson_check);
  CLI::App* gauge = group("gauge", "gauge action");
  leaf(gauge, "exp", "gauge transform and its polynomial path", gauge_exp_cmd);
  leaf(gauge, "path-check", "check a polynomial gauge path", gauge_path_check_cmd);
  CLI::App* voronov = group("voronov", "higher derived brackets");
  leaf(voronov, "brackets", "derived brackets of a Maurer-Cartan generator", voronov_brackets_cmd);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInputError;
  }
  if (!selected) {
    err << "usage error: no command given\n";
    return kInputError;
  }

  Outcome o;
  try {
    o = selected(opt, in);
  } catch (const SchemaError& e) {
    err << "input error at " << (e.where.empty() ? "/" : e.where) << ": " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  const std::string text = o.report.dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
  } else {
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) {
      err << "cannot write " << opt.out << "\n";
      return kInputError;
    }
    file << text;
  }
  err << o.summary << "\n";
  return o.code;
}

}  // namespace htt::cli
