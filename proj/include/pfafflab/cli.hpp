#pragma once

// Command-line front end.  run_cli parses arguments, runs one command and
// returns the process exit code; output goes to the given streams so the
// commands can be exercised in-process.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfafflab/construct.hpp"
#include "pfafflab/corpus.hpp"

namespace pfafflab {

enum ExitCode : int { kOk = 0, kRefuted = 1, kBudget = 2, kUsage = 64 };

struct RunConfig {
  std::string field = "auto";  // auto | q | fp (QQ and GF are accepted too)
  std::vector<std::uint32_t> primes{10007, 10009};
  std::uint64_t seed = 1;
  std::size_t budget = GroebnerOptions{}.max_pairs;
  bool enumerate = false;
  bool sing = false;
  std::string out;

  void validate() {
    if (field == "QQ") field = "q";
    if (field == "GF") field = "fp";
    if (field != "auto" && field != "q" && field != "fp") throw CLI::ValidationError("--field", "expected auto, q or fp");
    std::set<std::uint32_t> seen;
    for (auto p : primes) {
      if (p < 101 || !is_prime(p)) throw CLI::ValidationError("--prime", std::to_string(p) + " is not a prime >= 101");
      if (!seen.insert(p).second) throw CLI::ValidationError("--prime", "primes must be distinct");
    }
    if (field == "fp" && primes.size() < 2)
      throw CLI::ValidationError("--prime", "modular mode needs two primes for the agreement check");
  }

  CertifyOptions certify() const {
    CertifyOptions o;
    o.mode = field == "q"    ? CertifyOptions::Mode::Rational
             : field == "fp" ? CertifyOptions::Mode::Modular
                             : CertifyOptions::Mode::Auto;
    o.primes = primes;
    o.enumerate = enumerate;
    o.groebner.max_pairs = budget;
    return o;
  }

  BundleOptions bundle() const {
    BundleOptions o;
    o.primes = primes;
    o.seed = seed;
    o.groebner.max_pairs = budget;
    o.singular = sing;
    return o;
  }
};

struct System {
  SkewMatrix<QQ> A;
  Quadric<QQ> Q;
  bool quadric_derived = false;
};

inline Json invariants_to_json(const BundleInvariants& inv) {
  Json j;
  j["c2"] = inv.c2;
  j["split"] = Json::array({Json::array({inv.split1.first, inv.split1.second}),
                            Json::array({inv.split2.first, inv.split2.second})});
  j["degPhi"] = inv.degPhi;
  j["gaussDegree"] = inv.gaussDegree;
  j["degY"] = inv.degY;
  j["label"] = inv.label;
  Json idx = Json::array();
  for (auto [p, q] : inv.index_set) idx.push_back(Json::array({p, q}));
  j["indexSet"] = idx;
  j["primes"] = inv.primes;
  if (inv.singular) j["singular"] = {{"dim", inv.singular->dimension}, {"deg", inv.singular->degree}};
  return j;
}

/// The quadric form, derived from the Pfaffian when absent.
inline void complete_quadric(System& s) {
  if (!s.Q.form.is_zero()) return;
  auto fac = pfaffian_factorization(s.A);
  if (!fac.remainder) throw SchemaError("quadric.form: missing, and the Pfaffian has no quadric factor to derive it from");
  s.Q.form = *fac.remainder;
  s.quadric_derived = true;
}

/// A system file is either {"matrix": ..., "quadric": ...} or a bare matrix
/// with the quadric in a separate file.
inline System load_system(const std::string& path, const std::string& quadric_path) {
  Json j = load_json_file(path);
  const bool wrapped = j.is_object() && j.contains("matrix");
  const Json& mj = wrapped ? j.at("matrix") : j;
  auto ring = make_ring(QQ{}, vars_from_json(mj, "matrix"));
  System s{matrix_from_json(ring, mj), Quadric<QQ>{Poly<QQ>(ring), std::nullopt}};
  if (!quadric_path.empty()) s.Q = quadric_from_json(ring, load_json_file(quadric_path));
  else if (wrapped && j.contains("quadric")) s.Q = quadric_from_json(ring, j.at("quadric"));
  else if (!wrapped) throw SchemaError("no quadric: pass --quadric or use {\"matrix\", \"quadric\"}");
  if (s.A.size() != 6 || !s.A.is_linear()) throw SchemaError("matrix: expected a 6x6 skew matrix of linear forms");
  complete_quadric(s);
  if (s.Q.param) {
    try {
      validate_quadric(s.Q);
    } catch (const InvalidQuadric& e) {
      throw SchemaError(std::string("quadric: ") + e.what());
    }
  }
  return s;
}

inline System system_from_corpus(const std::string& id, const std::string& corpus_path) {
  auto corpus = load_corpus(corpus_path);
  const auto* e = find_entry(corpus, id);
  if (!e) throw SchemaError("no corpus entry '" + id + "'");
  return {e->matrix, e->quadric, e->quadric_derived};
}

inline std::vector<Poly<QQ>> ideal_from_json(const Json& j, RingPtr<QQ>* ring_out) {
  MonomialOrder order = MonomialOrder::grevlex();
  if (j.contains("order")) {
    auto o = j.at("order").get<std::string>();
    if (o == "lex") order = MonomialOrder::lex();
    else if (o != "grevlex") throw SchemaError("ideal.order: expected grevlex or lex");
  }
  auto ring = make_ring(QQ{}, vars_from_json(j, "ideal"), order);
  const Json& gens = require(j, "gens", "ideal");
  if (!gens.is_array()) throw SchemaError("ideal.gens: expected an array");
  std::vector<Poly<QQ>> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    try {
      out.push_back(poly_from_json(ring, gens[i]));
    } catch (const ParseError& e) {
      throw SchemaError("ideal.gens[" + std::to_string(i) + "]: " + e.what());
    }
  }
  if (ring_out) *ring_out = ring;
  return out;
}

class Emitter {
 public:
  Emitter(std::ostream& out, const std::string& path) : out_(out), path_(path) {}
  void operator()(const Json& j) const {
    std::string text = j.dump(2) + "\n";
    if (path_.empty()) {
      out_ << text;
    } else {
      std::ofstream f(path_);
      if (!f) throw SchemaError("cannot write '" + path_ + "'");
      f << text;
    }
  }

 private:
  std::ostream& out_;
  std::string path_;
};

inline int certify_and_report(const System& s, const RunConfig& cfg, Json& j, Certificate* cert_out = nullptr) {
  auto outcome = certify_constant_rank(s.A, s.Q, cfg.certify());
  j["quadric"] = to_string(s.Q.form);
  if (s.quadric_derived) j["quadric_derived"] = true;
  if (auto* c = std::get_if<Certificate>(&outcome)) {
    j["certificate"] = certificate_to_json(*c);
    if (cert_out) *cert_out = *c;
    return kOk;
  }
  if (auto* r = std::get_if<Refutation>(&outcome)) {
    j["certificate"] = refutation_to_json(*r);
    return kRefuted;
  }
  j["certificate"] = {{"status", "budget-exceeded"}, {"message", std::get<BudgetReport>(outcome).message}};
  return kBudget;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"pfafflab: constant rank 4 skew matrices on a quadric surface"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string corpus_path = default_corpus_path();
  auto common = [&cfg](CLI::App* c) {
    c->add_option("--field", cfg.field, "auto, q (rationals) or fp (two primes)");
    c->add_option("--prime", cfg.primes, "primes for modular work")->delimiter(',');
    c->add_option("--seed", cfg.seed, "seed for every random draw");
    c->add_option("--budget", cfg.budget, "S-pair budget per Groebner basis");
    c->add_option("--out", cfg.out, "write JSON here instead of stdout");
  };

  // verify / classify
  std::string system_path, quadric_path, entry;
  auto add_system_args = [&](CLI::App* c) {
    c->add_option("system", system_path, "system JSON");
    c->add_option("--quadric", quadric_path, "quadric JSON");
    c->add_option("--entry", entry, "use a corpus entry instead of a file");
    c->add_option("--corpus", corpus_path, "corpus manifest");
  };
  auto* verify = app.add_subcommand("verify", "certify constant rank 4 on the quadric");
  add_system_args(verify);
  common(verify);
  verify->add_flag("--enumerate", cfg.enumerate, "also enumerate F_p points");
  auto* classify = app.add_subcommand("classify", "certify, compute invariants and classify");
  add_system_args(classify);
  common(classify);
  classify->add_flag("--sing", cfg.sing, "summarize the singular locus of Y");

  // construct
  auto* construct = app.add_subcommand("construct", "building blocks and pipelines");
  construct->require_subcommand(1);
  std::string point = "1,0,0,1";
  auto* block3 = construct->add_subcommand("block3", "3x3 block for a point of P^3");
  block3->add_option("--point", point, "comma-separated coordinates");
  common(block3);
  std::vector<std::string> dsum_paths;
  auto* dsum = construct->add_subcommand("dsum", "direct sum of matrices");
  dsum->add_option("matrices", dsum_paths, "matrix JSON files")->required()->expected(2, 64);
  common(dsum);
  std::string project_path, forms_path;
  std::size_t target_size = 6;
  auto* project = construct->add_subcommand("project", "compress by a centre and certify");
  project->add_option("matrix", project_path, "matrix JSON")->required();
  project->add_option("--forms", forms_path, "JSON list of linear forms in x0..x{m-1}")->required();
  project->add_option("--quadric", quadric_path, "quadric JSON")->required();
  project->add_option("--size", target_size, "size of the projected matrix");
  common(project);
  std::string plane_path, target;
  int draws = 500;
  auto* extend = construct->add_subcommand("extend", "extend & restrict a plane of constant rank 4");
  extend->add_option("plane", plane_path, "plane JSON")->required();
  extend->add_option("--target", target, "required label");
  extend->add_option("--draws", draws, "number of random extensions to try");
  common(extend);

  // corpus
  auto* corpus = app.add_subcommand("corpus", "the registry of reference matrices");
  corpus->require_subcommand(1);
  auto* clist = corpus->add_subcommand("list", "list entries");
  clist->add_option("--corpus", corpus_path, "corpus manifest");
  common(clist);
  auto* crun = corpus->add_subcommand("run", "check every entry against its expected values");
  crun->add_option("--entry", entry, "only this entry");
  crun->add_option("--corpus", corpus_path, "corpus manifest");
  crun->add_flag("--sing", cfg.sing, "also check singular summaries");
  common(crun);

  // gb-debug
  auto* gbd = app.add_subcommand("gb-debug", "Groebner utilities on an ideal JSON");
  gbd->require_subcommand(1);
  std::string ideal_path;
  std::vector<std::string> drop;
  std::map<std::string, CLI::App*> gb_cmds;
  for (const char* name : {"gb", "empty", "degree", "eliminate"}) {
    auto* c = gbd->add_subcommand(name);
    c->add_option("ideal", ideal_path, "ideal JSON")->required();
    if (std::string(name) == "eliminate") c->add_option("--drop", drop, "variables to eliminate")->required();
    common(c);
    gb_cmds[name] = c;
  }

  try {
    app.parse(argc, argv);
    cfg.validate();
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  Emitter emit(out, cfg.out);
  try {
    auto load = [&]() {
      if (!entry.empty()) return system_from_corpus(entry, corpus_path);
      if (system_path.empty()) throw SchemaError("no system given: pass a file or --entry");
      return load_system(system_path, quadric_path);
    };

    if (*verify) {
      auto s = load();
      Json j;
      int code = certify_and_report(s, cfg, j);
      emit(j);
      return code;
    }

    if (*classify) {
      auto s = load();
      Json j;
      int code = certify_and_report(s, cfg, j);
      if (code == kOk) j["invariants"] = invariants_to_json(compute_invariants(s.A, s.Q, cfg.bundle()));
      else err << "not classified: the system is not certified\n";
      emit(j);
      return code;
    }

    if (*block3) {
      std::vector<Rational> coords;
      std::stringstream ss(point);
      for (std::string tok; std::getline(ss, tok, ',');) coords.push_back(Rational::parse(tok));
      emit(matrix_to_json(block_point3(standard_ring(), coords)));
      return kOk;
    }

    if (*dsum) {
      std::optional<SkewMatrix<QQ>> acc;
      RingPtr<QQ> ring;
      for (const auto& p : dsum_paths) {
        Json mj = load_json_file(p);
        if (!ring) ring = make_ring(QQ{}, vars_from_json(mj, p));
        auto m = matrix_from_json(ring, mj, p);
        acc = acc ? direct_sum(*acc, m) : m;
      }
      emit(matrix_to_json(*acc));
      return kOk;
    }

    if (*project) {
      Json mj = load_json_file(project_path);
      auto ring = make_ring(QQ{}, vars_from_json(mj, "matrix"));
      auto A = matrix_from_json(ring, mj);
      Json fj = load_json_file(forms_path);
      if (!fj.is_array()) throw SchemaError("forms: expected a JSON list of strings");
      auto spec = ProjectionSpec::from_strings(fj.get<std::vector<std::string>>(), A.size());
      System s{A, quadric_from_json(ring, load_json_file(quadric_path))};
      if (s.Q.form.is_zero()) throw SchemaError("quadric.form: required for projection");
      auto res = project_system(A, spec, s.Q, cfg.certify(), target_size);
      Json j;
      j["matrix"] = matrix_to_json(res.matrix);
      System ps{res.matrix, s.Q};
      int code = kOk;
      if (auto* c = std::get_if<Certificate>(&res.certification)) j["certificate"] = certificate_to_json(*c);
      else if (auto* r = std::get_if<Refutation>(&res.certification)) {
        j["certificate"] = refutation_to_json(*r);
        code = kRefuted;
      } else {
        j["certificate"] = {{"status", "budget-exceeded"}, {"message", std::get<BudgetReport>(res.certification).message}};
        code = kBudget;
      }
      if (code == kOk) j["invariants"] = invariants_to_json(compute_invariants(ps.A, ps.Q, cfg.bundle()));
      emit(j);
      return code;
    }

    if (*extend) {
      auto in = plane_from_json(load_json_file(plane_path));
      ExtendOptions eo;
      eo.seed = cfg.seed;
      eo.budget = draws;
      if (!target.empty()) eo.target = target;
      eo.certify = cfg.certify();
      eo.bundle = cfg.bundle();
      try {
        auto r = extend_restrict(in, eo);
        Json j;
        j["matrix"] = matrix_to_json(r.matrix);
        j["quadric"] = quadric_to_json(r.quadric);
        j["linear_factor"] = to_string(r.linear_factor);
        j["draw"] = r.draw;
        j["seed"] = cfg.seed;
        j["certificate"] = certificate_to_json(r.certificate);
        j["invariants"] = invariants_to_json(r.invariants);
        emit(j);
        return kOk;
      } catch (const BudgetExhausted& e) {
        err << e.what() << "\n";
        return kBudget;
      }
    }

    if (*clist) {
      Json arr = Json::array();
      for (const auto& e : load_corpus(corpus_path))
        arr.push_back({{"id", e.id}, {"tag", e.tag}, {"label", e.expected.label}, {"c2", e.expected.c2},
                       {"quadric", to_string(e.quadric.form)}, {"quadric_derived", e.quadric_derived}});
      emit(arr);
      return kOk;
    }

    if (*crun) {
      auto all = load_corpus(corpus_path);
      std::vector<CorpusEntry> chosen;
      if (entry.empty()) chosen = all;
      else if (const auto* e = find_entry(all, entry)) chosen.push_back(*e);
      else throw SchemaError("no corpus entry '" + entry + "'");
      CorpusRunOptions ro{cfg.certify(), cfg.bundle(), cfg.sing};
      auto reports = run_corpus(chosen, ro);
      Json j;
      Json entries = Json::array();
      std::size_t passed = 0;
      for (const auto& r : reports) {
        Json e;
        e["id"] = r.id;
        e["pass"] = r.pass();
        Json checks = Json::array();
        for (const auto& c : r.checks)
          checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        e["checks"] = checks;
        if (r.invariants) e["invariants"] = invariants_to_json(*r.invariants);
        if (!r.error.empty()) e["error"] = r.error;
        entries.push_back(e);
        passed += r.pass();
      }
      auto labels = witnessed_labels(reports);
      j["entries"] = entries;
      j["passed"] = passed;
      j["total"] = reports.size();
      j["labels"] = labels;
      j["all_labels_witnessed"] = labels.size() == all_labels().size();
      emit(j);
      err << passed << "/" << reports.size() << " entries pass, " << labels.size() << "/" << all_labels().size()
          << " labels witnessed\n";
      bool ok = passed == reports.size() && (!entry.empty() || labels.size() == all_labels().size());
      return ok ? kOk : kRefuted;
    }

    for (auto& [name, cmd] : gb_cmds) {
      if (!*cmd) continue;
      RingPtr<QQ> ring;
      auto gens = ideal_from_json(load_json_file(ideal_path), &ring);
      GroebnerOptions go;
      go.max_pairs = cfg.budget;
      Json j;
      auto polys = [](const std::vector<Poly<QQ>>& v) {
        Json a = Json::array();
        for (const auto& p : v) a.push_back(to_string(p));
        return a;
      };
      if (name == "gb") {
        j["basis"] = polys(groebner_basis(gens, go));
      } else if (name == "empty") {
        auto r = is_projectively_empty(gens, go);
        j["empty"] = r.empty;
        if (r.empty) j["witness_exponents"] = r.witness_exponents;
      } else if (name == "degree") {
        try {
          j["degree"] = zero_dim_degree(gens, go);
        } catch (const PositiveDimensional& e) {
          j["degree"] = nullptr;
          j["message"] = e.what();
        }
      } else {
        std::vector<std::size_t> idx;
        for (const auto& v : drop) {
          auto i = ring->index_of(v);
          if (!i) throw SchemaError("--drop: unknown variable '" + v + "'");
          idx.push_back(*i);
        }
        j["generators"] = polys(eliminate(gens, idx, go));
      }
      emit(j);
      return kOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const SchemaError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRefuted;
  }
  return kUsage;
}

}  // namespace pfafflab
