#pragma once

// JSON forms of skew matrices, quadrics, ideals and certificates.
//
//   matrix:  {"size": 6, "vars": ["a","b","c","d"], "upper": [[1, 2, {"a": "1"}], ...]}
//            (1-based indices, i < j; entries are monomial maps or expression strings)
//   quadric: {"vars": [...], "form": <poly>, "param": [<poly in x0,x1,y0,y1> x4]}
//   ideal:   {"vars": [...], "order": "grevlex", "gens": [<poly>, ...]}

#include <fstream>
#include <string>

#include <json.hpp>

#include "pfafflab/certify.hpp"
#include "pfafflab/poly_io.hpp"

namespace pfafflab {

using Json = nlohmann::ordered_json;

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("'" + path + "': " + e.what());
  }
}

template <class J>
const J& require(const J& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<std::string> vars_from_json(const Json& j, const std::string& where) {
  const Json& v = require(j, "vars", where);
  if (!v.is_array() || v.empty()) throw SchemaError(where + ".vars: expected a nonempty array of names");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw SchemaError(where + ".vars: names must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

template <class F>
SkewMatrix<F> matrix_from_json(const RingPtr<F>& ring, const Json& j, const std::string& where = "matrix") {
  const Json& size = require(j, "size", where);
  if (!size.is_number_integer() || size.get<long>() < 0 || size.get<long>() > 31)
    throw SchemaError(where + ".size: expected an integer in [0, 31]");
  if (j.contains("vars") && vars_from_json(j, where) != ring->vars())
    throw SchemaError(where + ".vars: does not match the expected variables");
  const std::size_t n = size.get<std::size_t>();
  SkewMatrix<F> A(ring, n);
  const Json& upper = require(j, "upper", where);
  if (!upper.is_array()) throw SchemaError(where + ".upper: expected an array");
  for (std::size_t k = 0; k < upper.size(); ++k) {
    const Json& e = upper[k];
    std::string at = where + ".upper[" + std::to_string(k) + "]";
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw SchemaError(at + ": expected [i, j, poly]");
    long i = e[0].get<long>(), jj = e[1].get<long>();
    if (i < 1 || jj < 1 || i >= jj || static_cast<std::size_t>(jj) > n)
      throw SchemaError(at + ": indices must satisfy 1 <= i < j <= size");
    try {
      A.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1), poly_from_json(ring, e[2]));
    } catch (const ParseError& err) {
      throw SchemaError(at + ": " + err.what());
    }
  }
  return A;
}

template <class F>
Json matrix_to_json(const SkewMatrix<F>& A) {
  Json j;
  j["size"] = A.size();
  j["vars"] = A.ring()->vars();
  Json up = Json::array();
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t k = i + 1; k < A.size(); ++k)
      if (!A.upper(i, k).is_zero()) up.push_back(Json::array({i + 1, k + 1, poly_to_json(A.upper(i, k))}));
  j["upper"] = up;
  return j;
}

/// Reads a quadric; a missing or null "form" is returned as the zero
/// polynomial so the caller can derive it.
inline Quadric<QQ> quadric_from_json(const RingPtr<QQ>& ring, const Json& j, const std::string& where = "quadric") {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  if (j.contains("vars") && vars_from_json(j, where) != ring->vars())
    throw SchemaError(where + ".vars: does not match the matrix variables");
  Quadric<QQ> q{Poly<QQ>(ring), std::nullopt};
  try {
    if (j.contains("form") && !j.at("form").is_null()) q.form = poly_from_json(ring, j.at("form"));
    if (j.contains("param") && !j.at("param").is_null()) {
      const Json& p = j.at("param");
      if (!p.is_array() || p.size() != 4) throw SchemaError(where + ".param: expected 4 polynomials");
      auto pr = parameter_ring(QQ{});
      Parametrization<QQ> par{Poly<QQ>(pr), Poly<QQ>(pr), Poly<QQ>(pr), Poly<QQ>(pr)};
      for (std::size_t i = 0; i < 4; ++i) par[i] = poly_from_json(pr, p[i]);
      q.param = par;
    }
  } catch (const ParseError& err) {
    throw SchemaError(where + ": " + err.what());
  }
  return q;
}

inline Json quadric_to_json(const Quadric<QQ>& q) {
  Json j;
  j["vars"] = q.ring()->vars();
  j["form"] = to_string(q.form);
  if (q.param) {
    Json p = Json::array();
    for (const auto& f : *q.param) p.push_back(to_string(f));
    j["param"] = p;
  } else {
    j["param"] = nullptr;
  }
  return j;
}

inline std::string point_json_string(const std::array<ModP, 4>& pt) {
  std::string s;
  for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + pt[i].str();
  return s;
}

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  j["status"] = "certified";
  j["mode"] = c.mode;
  j["pfaffian_zero"] = c.pfaffian_zero;
  j["quotient"] = c.quotient ? Json(to_string(*c.quotient)) : Json(nullptr);
  if (c.mode == "symbolic") {
    j["field"] = "QQ";
    j["witness_exponents"] = c.witness_exponents;
    j["basis_size"] = c.basis.size();
  } else {
    Json mods = Json::array();
    for (const auto& m : c.modular)
      mods.push_back({{"prime", m.prime}, {"witness_exponents", m.witness_exponents}, {"basis_size", m.basis.size()}});
    j["modular"] = mods;
  }
  if (!c.enumeration.empty()) {
    Json en = Json::array();
    for (const auto& r : c.enumeration)
      en.push_back({{"prime", r.prime}, {"points", r.points}, {"all_rank4", r.all_rank4}});
    j["enumeration"] = en;
  }
  return j;
}

inline Json refutation_to_json(const Refutation& r) {
  Json j;
  j["status"] = "refuted";
  switch (r.condition) {
    case Refutation::Condition::Divisibility: j["condition"] = "divisibility"; break;
    case Refutation::Condition::RankDrop: j["condition"] = "rank-drop"; break;
    case Refutation::Condition::Disagreement: j["condition"] = "prime-disagreement"; break;
  }
  j["message"] = r.message;
  if (r.witness) {
    j["witness"] = point_json_string(*r.witness);
    j["prime"] = *r.prime;
    j["witness_rank"] = r.witness_rank;
  }
  return j;
}

inline Json factorization_to_json(const Factorization& f) {
  Json j;
  j["identically_zero"] = f.identically_zero;
  if (f.identically_zero) return j;
  j["unit"] = f.unit.str();
  Json lin = Json::array();
  for (const auto& l : f.linear) lin.push_back(to_string(l));
  j["linear"] = lin;
  j["remainder"] = f.remainder ? Json(to_string(*f.remainder)) : Json(nullptr);
  return j;
}

}  // namespace pfafflab
