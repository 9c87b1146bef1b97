#pragma once

// JSON forms of complexes, maps, equivalences, elements, L∞ structures and
// polynomial paths. Rationals are strings "p/q" (or "p"), matrices are
// row-major arrays of rows, degrees are integers. Output is canonical: keys
// sorted, blocks and terms in ascending order, zero blocks omitted.

#include "htt/bracket.hpp"
#include "htt/complex.hpp"
#include "htt/structure.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>
#include <string>

namespace htt {

using Json = nlohmann::json;

/// Input that parses as JSON but violates the schema; `where` is a JSON pointer.
struct SchemaError : std::runtime_error {
  std::string where;
  SchemaError(std::string at, const std::string& what) : std::runtime_error(at + ": " + what), where(std::move(at)) {}
};

namespace detail {

inline const Json& field(const Json& j, const std::string& key, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at, "missing field '" + key + "'");
  return *it;
}

inline void only_fields(const Json& j, std::initializer_list<const char*> keys, const std::string& at) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw SchemaError(at, "unexpected field '" + k + "'");
}

inline int as_int(const Json& j, const std::string& at) {
  if (!j.is_number_integer()) throw SchemaError(at, "expected an integer");
  return j.get<int>();
}

inline const Json& as_array(const Json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array");
  return j;
}

inline std::string as_string(const Json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

inline Json rational_to_json(const Rational& q) { return format_rational(q); }

inline Rational rational_from_json(const Json& j, const std::string& at = "") {
  if (j.is_number_integer()) return Rational(j.get<long>());
  const std::string s = detail::as_string(j, at);
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw SchemaError(at, "'" + s + "' is not a rational number");
  }
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& at) {
  detail::as_array(j, at);
  if (j.size() != rows)
    throw SchemaError(at, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rat = at + "/" + std::to_string(r);
    detail::as_array(j[r], rat);
    if (j[r].size() != cols)
      throw SchemaError(rat, "expected " + std::to_string(cols) + " columns, got " + std::to_string(j[r].size()));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[r][c], rat + "/" + std::to_string(c));
  }
  return m;
}

// Complex: {"basis": [{"degree": i, "names": [...]}, ...],
//           "differential": [{"degree": i, "matrix": rows}, ...]}
inline Json complex_to_json(const Complex& c) {
  Json basis = Json::array(), diff = Json::array();
  for (const auto& [deg, names] : c.basis)
    if (!names.empty()) basis.push_back({{"degree", deg}, {"names", names}});
  for (const auto& [deg, m] : c.d)
    if (!m.empty() && !m.is_zero()) diff.push_back({{"degree", deg}, {"matrix", matrix_to_json(m)}});
  return {{"basis", basis}, {"differential", diff}};
}

inline Complex complex_from_json(const Json& j, const std::string& at = "") {
  detail::only_fields(j, {"basis", "differential"}, at);
  Complex c;
  std::set<std::string> seen;
  const auto& basis = detail::as_array(detail::field(j, "basis", at), at + "/basis");
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string here = at + "/basis/" + std::to_string(k);
    detail::only_fields(basis[k], {"degree", "names"}, here);
    const int deg = detail::as_int(detail::field(basis[k], "degree", here), here + "/degree");
    if (c.basis.count(deg)) throw SchemaError(here + "/degree", "degree " + std::to_string(deg) + " listed twice");
    const auto& names = detail::as_array(detail::field(basis[k], "names", here), here + "/names");
    auto& out = c.basis[deg];
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::string name = detail::as_string(names[i], here + "/names/" + std::to_string(i));
      if (name.empty()) throw SchemaError(here + "/names/" + std::to_string(i), "empty generator name");
      if (!seen.insert(name).second) throw SchemaError(here + "/names/" + std::to_string(i), "duplicate name '" + name + "'");
      out.push_back(std::move(name));
    }
  }
  if (j.contains("differential")) {
    const auto& diff = detail::as_array(j["differential"], at + "/differential");
    for (std::size_t k = 0; k < diff.size(); ++k) {
      const std::string here = at + "/differential/" + std::to_string(k);
      detail::only_fields(diff[k], {"degree", "matrix"}, here);
      const int deg = detail::as_int(detail::field(diff[k], "degree", here), here + "/degree");
      if (c.d.count(deg)) throw SchemaError(here + "/degree", "degree " + std::to_string(deg) + " listed twice");
      c.d[deg] = matrix_from_json(detail::field(diff[k], "matrix", here), c.dim(deg + 1), c.dim(deg), here + "/matrix");
    }
  }
  for (auto it = c.d.begin(); it != c.d.end();)
    it = (it->second.empty() || it->second.is_zero()) ? c.d.erase(it) : std::next(it);
  return c;
}

// GradedMap: {"shift": s, "blocks": [{"degree": i, "matrix": rows}, ...]};
// source and target come from the enclosing document.
inline Json map_to_json(const GradedMap& m) {
  Json blocks = Json::array();
  for (const auto& [deg, b] : m.blocks)
    if (!b.empty() && !b.is_zero()) blocks.push_back({{"degree", deg}, {"matrix", matrix_to_json(b)}});
  return {{"shift", m.shift}, {"blocks", blocks}};
}

inline GradedMap map_from_json(const Json& j, std::shared_ptr<const Complex> src, std::shared_ptr<const Complex> tgt,
                               std::optional<int> expected_shift, const std::string& at = "") {
  detail::only_fields(j, {"shift", "blocks"}, at);
  GradedMap m;
  m.source = std::move(src);
  m.target = std::move(tgt);
  m.shift = detail::as_int(detail::field(j, "shift", at), at + "/shift");
  if (expected_shift && m.shift != *expected_shift)
    throw SchemaError(at + "/shift", "expected shift " + std::to_string(*expected_shift));
  const auto& blocks = detail::as_array(detail::field(j, "blocks", at), at + "/blocks");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string here = at + "/blocks/" + std::to_string(k);
    detail::only_fields(blocks[k], {"degree", "matrix"}, here);
    const int deg = detail::as_int(detail::field(blocks[k], "degree", here), here + "/degree");
    if (m.blocks.count(deg)) throw SchemaError(here + "/degree", "degree " + std::to_string(deg) + " listed twice");
    m.blocks[deg] = matrix_from_json(detail::field(blocks[k], "matrix", here), m.target->dim(deg + m.shift),
                                     m.source->dim(deg), here + "/matrix");
  }
  m.normalize();
  return m;
}

// HomotopyEquivalence: {"E", "F", "f", "g", "H_E", "H_F"}.
inline Json equivalence_to_json(const HomotopyEquivalence& h) {
  return {{"E", complex_to_json(*h.E)}, {"F", complex_to_json(*h.F)}, {"f", map_to_json(h.f)},
          {"g", map_to_json(h.g)},      {"H_E", map_to_json(h.H_E)},   {"H_F", map_to_json(h.H_F)}};
}

inline HomotopyEquivalence equivalence_from_json(const Json& j, const std::string& at = "") {
  detail::only_fields(j, {"E", "F", "f", "g", "H_E", "H_F"}, at);
  HomotopyEquivalence h;
  h.E = share(complex_from_json(detail::field(j, "E", at), at + "/E"));
  h.F = share(complex_from_json(detail::field(j, "F", at), at + "/F"));
  h.f = map_from_json(detail::field(j, "f", at), h.E, h.F, 0, at + "/f");
  h.g = map_from_json(detail::field(j, "g", at), h.F, h.E, 0, at + "/g");
  h.H_E = map_from_json(detail::field(j, "H_E", at), h.E, h.E, -1, at + "/H_E");
  h.H_F = map_from_json(detail::field(j, "H_F", at), h.F, h.F, -1, at + "/H_F");
  return h;
}

// Generator references: "xi:name" for the copy of E, "theta:name" for E*.
inline std::string generator_ref(const GeneratorTable& t, std::uint32_t id) {
  const auto& g = t[id];
  return (g.side == Side::FromE ? "xi:" : "theta:") + g.base_name;
}

inline std::uint32_t generator_from_ref(const GeneratorTable& t, const std::string& ref, const std::string& at) {
  Side side;
  std::string name;
  if (ref.rfind("xi:", 0) == 0) {
    side = Side::FromE;
    name = ref.substr(3);
  } else if (ref.rfind("theta:", 0) == 0) {
    side = Side::FromEDual;
    name = ref.substr(6);
  } else {
    throw SchemaError(at, "generator reference '" + ref + "' must start with 'xi:' or 'theta:'");
  }
  if (!t.complex()->find(name)) throw SchemaError(at, "unknown generator '" + name + "'");
  return t.id(side, name);
}

// Element: [{"coefficient": "p/q", "monomial": [refs]}, ...], terms in
// canonical monomial order.
inline Json element_to_json(const Element& a) {
  Json terms = Json::array();
  for (const auto& [m, q] : a.terms) {
    Json mono = Json::array();
    for (auto g : m) mono.push_back(generator_ref(*a.table, g));
    terms.push_back({{"coefficient", rational_to_json(q)}, {"monomial", mono}});
  }
  return terms;
}

/// Words in any order are accepted and normalized with their Koszul sign.
inline Element element_from_json(const Json& j, const TablePtr& t, const std::string& at = "") {
  Element out(t);
  detail::as_array(j, at);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string here = at + "/" + std::to_string(k);
    detail::only_fields(j[k], {"coefficient", "monomial"}, here);
    const Rational q = rational_from_json(detail::field(j[k], "coefficient", here), here + "/coefficient");
    const auto& mono = detail::as_array(detail::field(j[k], "monomial", here), here + "/monomial");
    Monomial w;
    for (std::size_t i = 0; i < mono.size(); ++i) {
      const std::string gat = here + "/monomial/" + std::to_string(i);
      w.push_back(generator_from_ref(*t, detail::as_string(mono[i], gat), gat));
    }
    out.add_word(w, q);
  }
  return out;
}

// Polynomial in t: array of elements, lowest power first.
inline Json poly_to_json(const PolyElement& p) {
  Json out = Json::array();
  for (const auto& c : p.coeffs) out.push_back(element_to_json(c));
  return out;
}

inline PolyElement poly_from_json(const Json& j, const TablePtr& t, const std::string& at = "") {
  PolyElement p;
  detail::as_array(j, at);
  for (std::size_t k = 0; k < j.size(); ++k) p.coeffs.push_back(element_from_json(j[k], t, at + "/" + std::to_string(k)));
  p.trim();
  return p;
}

// LinftyStructure: {"complex": ..., "brackets": [{"inputs": [names],
// "output": [{"name": n, "coefficient": "p/q"}, ...]}, ...]}; each entry
// fixes l_k on one basis tuple, extended by graded antisymmetry.
inline Json structure_to_json(const LinftyStructure& s) {
  const BasisIndex bi(*s.complex);
  auto name_of = [&](std::size_t g) {
    const auto [deg, k] = bi.entries[g];
    return s.complex->basis.at(deg)[k];
  };
  Json brackets = Json::array();
  for (const auto& [k, table] : s.brackets)
    for (const auto& [idx, v] : table) {
      if (vec_is_zero(v)) continue;
      Json inputs = Json::array(), output = Json::array();
      for (auto g : idx) inputs.push_back(name_of(g));
      for (std::size_t g = 0; g < v.size(); ++g)
        if (!is_zero(v[g])) output.push_back({{"name", name_of(g)}, {"coefficient", rational_to_json(v[g])}});
      brackets.push_back({{"inputs", inputs}, {"output", output}});
    }
  return {{"complex", complex_to_json(*s.complex)}, {"brackets", brackets}};
}

inline LinftyStructure structure_from_json(const Json& j, const std::string& at = "") {
  detail::only_fields(j, {"complex", "brackets"}, at);
  LinftyStructure s{share(complex_from_json(detail::field(j, "complex", at), at + "/complex")), {}};
  const BasisIndex bi(*s.complex);
  auto index_of = [&](const Json& n, const std::string& here) {
    const std::string name = detail::as_string(n, here);
    auto pos = s.complex->find(name);
    if (!pos) throw SchemaError(here, "unknown generator '" + name + "'");
    return bi.global(pos->first, pos->second);
  };
  const auto& brackets = detail::as_array(detail::field(j, "brackets", at), at + "/brackets");
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t e = 0; e < brackets.size(); ++e) {
    const std::string here = at + "/brackets/" + std::to_string(e);
    detail::only_fields(brackets[e], {"inputs", "output"}, here);
    const auto& inputs = detail::as_array(detail::field(brackets[e], "inputs", here), here + "/inputs");
    if (inputs.size() < 2) throw SchemaError(here + "/inputs", "brackets need at least two inputs");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < inputs.size(); ++i) idx.push_back(index_of(inputs[i], here + "/inputs/" + std::to_string(i)));
    auto sorted = idx;
    detail::antisymmetric_sort(bi, sorted);
    if (!seen.insert(sorted).second) throw SchemaError(here + "/inputs", "inputs listed twice up to order");
    Vec v(bi.size());
    const auto& output = detail::as_array(detail::field(brackets[e], "output", here), here + "/output");
    for (std::size_t o = 0; o < output.size(); ++o) {
      const std::string oat = here + "/output/" + std::to_string(o);
      detail::only_fields(output[o], {"name", "coefficient"}, oat);
      v[index_of(detail::field(output[o], "name", oat), oat + "/name")] +=
          rational_from_json(detail::field(output[o], "coefficient", oat), oat + "/coefficient");
    }
    try {
      set_bracket(s, bi, idx, v);
    } catch (const std::exception& ex) {
      throw SchemaError(here, ex.what());
    }
  }
  if (auto r = check_structure_degrees(s); !r) throw SchemaError(at + "/brackets", r.message);
  return s;
}

/// Parses text, reporting the byte offset of malformed input.
inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& ex) {
    throw SchemaError(source + "@" + std::to_string(ex.byte), std::string("malformed JSON: ") + ex.what());
  }
}

}  // namespace htt
