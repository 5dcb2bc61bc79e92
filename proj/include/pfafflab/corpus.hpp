#pragma once

// The registry of the twelve matrices with their expected invariants, and
// the per-entry checker used by `corpus run` and the acceptance suite.

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "pfafflab/bundle.hpp"
#include "pfafflab/json_io.hpp"

#ifndef PFAFFLAB_DATA_DIR
#define PFAFFLAB_DATA_DIR "data"
#endif

namespace pfafflab {

inline std::string default_corpus_path() { return std::string(PFAFFLAB_DATA_DIR) + "/corpus.json"; }

struct ExpectedPfaffian {
  bool zero = false;
  std::optional<Poly<QQ>> linear, quadric;
};

struct ExpectedInvariants {
  int c2 = 0;
  std::optional<std::pair<SplitType, SplitType>> split;
  int degPhi = 0;
  int degY = 0;
  std::string label;
  ExpectedPfaffian pfaffian;
  std::optional<SingularSummary> singular;
  Json provenance;
};

struct CorpusEntry {
  std::string id;
  std::string tag;  // where the matrix is displayed
  SkewMatrix<QQ> matrix;
  Quadric<QQ> quadric;
  bool quadric_derived = false;  // form taken from the Pfaffian factorization
  ExpectedInvariants expected;
};

namespace detail {

inline int json_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

inline SplitType split_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw SchemaError(where + ": expected [a, b]");
  SplitType s{j[0].get<int>(), j[1].get<int>()};
  if (s != SplitType{1, 1} && s != SplitType{0, 2}) throw SchemaError(where + ": splitting type must be [1,1] or [0,2]");
  return s;
}

}  // namespace detail

inline CorpusEntry corpus_entry_from_json(const Json& e, const std::string& where) {
  CorpusEntry out;
  const Json& id = require(e, "id", where);
  if (!id.is_string()) throw SchemaError(where + ".id: expected a string");
  out.id = id.get<std::string>();
  if (e.contains("tag")) out.tag = e.at("tag").get<std::string>();
  const Json& mj = require(e, "matrix", where);
  auto ring = make_ring(QQ{}, vars_from_json(mj, where + ".matrix"));
  out.matrix = matrix_from_json(ring, mj, where + ".matrix");
  if (out.matrix.size() != 6) throw SchemaError(where + ".matrix.size: corpus matrices are 6x6");
  if (!out.matrix.is_linear()) throw SchemaError(where + ".matrix: entries must be linear forms");
  out.quadric = quadric_from_json(ring, require(e, "quadric", where), where + ".quadric");

  const std::string ew = where + ".expected";
  const Json& x = require(e, "expected", where);
  auto& ex = out.expected;
  ex.c2 = detail::json_int(x, "c2", ew);
  ex.degPhi = detail::json_int(x, "degPhi", ew);
  ex.degY = detail::json_int(x, "degY", ew);
  const Json& label = require(x, "label", ew);
  if (!label.is_string() || std::find(all_labels().begin(), all_labels().end(), label.get<std::string>()) == all_labels().end())
    throw SchemaError(ew + ".label: expected one of DEC1..DEC4, IND1..IND5");
  ex.label = label.get<std::string>();
  if (x.contains("split") && !x.at("split").is_null()) {
    const Json& s = x.at("split");
    if (!s.is_array() || s.size() != 2) throw SchemaError(ew + ".split: expected two splitting types");
    ex.split = {detail::split_from_json(s[0], ew + ".split[0]"), detail::split_from_json(s[1], ew + ".split[1]")};
  }
  const Json& pf = require(x, "pfaffian", ew);
  try {
    if (pf.contains("zero") && pf.at("zero").get<bool>()) ex.pfaffian.zero = true;
    else {
      ex.pfaffian.linear = poly_from_json(ring, require(pf, "linear", ew + ".pfaffian"));
      ex.pfaffian.quadric = poly_from_json(ring, require(pf, "quadric", ew + ".pfaffian"));
    }
  } catch (const ParseError& err) {
    throw SchemaError(ew + ".pfaffian: " + err.what());
  }
  if (x.contains("singular")) {
    const std::string sw = ew + ".singular";
    ex.singular = SingularSummary{detail::json_int(x.at("singular"), "dim", sw), detail::json_int(x.at("singular"), "deg", sw)};
  }
  ex.provenance = require(x, "provenance", ew);
  if (!ex.provenance.is_object() || ex.provenance.empty())
    throw SchemaError(ew + ".provenance: expected a nonempty object of tags");

  if (out.quadric.form.is_zero()) {
    auto fac = pfaffian_factorization(out.matrix);
    if (!fac.remainder) throw SchemaError(where + ".quadric.form: missing, and the Pfaffian has no quadric factor");
    out.quadric.form = *fac.remainder;
    out.quadric_derived = true;
  }
  try {
    validate_quadric(out.quadric);
  } catch (const InvalidQuadric& err) {
    throw SchemaError(where + ".quadric: " + err.what());
  }
  return out;
}

inline std::vector<CorpusEntry> load_corpus(const std::string& path = default_corpus_path()) {
  Json j = load_json_file(path);
  const Json& entries = require(j, "entries", "corpus");
  if (!entries.is_array()) throw SchemaError("corpus.entries: expected an array");
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    out.push_back(corpus_entry_from_json(entries[i], "entries[" + std::to_string(i) + "]"));
  return out;
}

inline const CorpusEntry* find_entry(const std::vector<CorpusEntry>& corpus, const std::string& id) {
  for (const auto& e : corpus)
    if (e.id == id || "(" + e.id + ")" == id) return &e;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Checking an entry

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct EntryReport {
  std::string id;
  std::vector<Check> checks;
  std::optional<BundleInvariants> invariants;
  std::string error;  // set when a computation failed outright
  bool pass() const {
    return error.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

struct CorpusRunOptions {
  CertifyOptions certify{};
  BundleOptions bundle{};
  bool singular = false;
};

inline std::string split_string(SplitType s) {
  return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

inline std::string pfaffian_string(const Factorization& f) {
  if (f.identically_zero) return "0";
  std::string s;
  for (const auto& l : f.linear) s += "(" + to_string(l) + ")";
  if (f.remainder) s += "(" + to_string(*f.remainder) + ")";
  return s;
}

/// Pfaffian matches expected data up to a unit: zero, or linear * quadric.
inline bool pfaffian_matches(const Factorization& fac, const ExpectedPfaffian& ex, const SkewMatrix<QQ>& A) {
  if (ex.zero) return fac.identically_zero;
  if (fac.identically_zero) return false;
  return equal_up_to_unit(pfaffian(A), *ex.linear * *ex.quadric);
}

inline EntryReport check_entry(const CorpusEntry& e, const CorpusRunOptions& opt) {
  EntryReport rep{e.id, {}, std::nullopt, {}};
  auto add = [&rep](std::string name, std::string expected, std::string actual) {
    bool pass = expected == actual;
    rep.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  try {
    auto fac = pfaffian_factorization(e.matrix);
    std::string expected_pf = e.expected.pfaffian.zero
                                  ? "0"
                                  : "(" + to_string(*e.expected.pfaffian.linear) + ")(" +
                                        to_string(*e.expected.pfaffian.quadric) + ")";
    rep.checks.push_back({"pfaffian", expected_pf, pfaffian_string(fac), pfaffian_matches(fac, e.expected.pfaffian, e.matrix)});

    auto outcome = certify_constant_rank(e.matrix, e.quadric, opt.certify);
    std::string status = std::holds_alternative<Certificate>(outcome)   ? "certified"
                         : std::holds_alternative<Refutation>(outcome) ? "refuted: " + std::get<Refutation>(outcome).message
                                                                       : "budget: " + std::get<BudgetReport>(outcome).message;
    add("certified", "certified", status);
    if (!std::holds_alternative<Certificate>(outcome)) return rep;

    BundleOptions bo = opt.bundle;
    bo.singular = opt.singular && e.expected.singular.has_value();
    auto inv = compute_invariants(e.matrix, e.quadric, bo);
    rep.invariants = inv;
    add("c2", std::to_string(e.expected.c2), std::to_string(inv.c2));
    if (e.expected.split) {
      auto [s1, s2] = *e.expected.split;
      bool ok = same_split_multiset(s1, s2, inv.split1, inv.split2);
      rep.checks.push_back({"split", split_string(s1) + split_string(s2), split_string(inv.split1) + split_string(inv.split2), ok});
    }
    add("degPhi", std::to_string(e.expected.degPhi), std::to_string(inv.degPhi));
    add("degY", std::to_string(e.expected.degY), std::to_string(inv.degY));
    add("label", e.expected.label, inv.label);
    if (bo.singular && inv.singular) {
      auto str = [](const SingularSummary& s) {
        return "dim " + std::to_string(s.dimension) + ", deg " + std::to_string(s.degree);
      };
      add("singular", str(*e.expected.singular), str(*inv.singular));
    }
  } catch (const std::exception& ex) {
    rep.error = ex.what();
  }
  return rep;
}

/// Checks entries in parallel; reports come back in corpus order.
inline std::vector<EntryReport> run_corpus(const std::vector<CorpusEntry>& corpus, const CorpusRunOptions& opt) {
  std::vector<std::future<EntryReport>> jobs;
  for (const auto& e : corpus) jobs.push_back(std::async(std::launch::async, [&e, &opt] { return check_entry(e, opt); }));
  std::vector<EntryReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

/// Labels witnessed by passing entries.
inline std::vector<std::string> witnessed_labels(const std::vector<EntryReport>& reports) {
  std::vector<std::string> seen;
  for (const auto& r : reports)
    if (r.pass() && r.invariants) seen.push_back(r.invariants->label);
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return seen;
}

}  // namespace pfafflab
