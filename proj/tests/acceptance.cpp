// Acceptance suite: one PASS/FAIL line per criterion.  Known deviations are
// printed as FAIL and do not change the exit status; any other failure does.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "support.hpp"

using namespace pfafflab;
using namespace pfafflab::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;  // unexpected
  std::vector<std::string> known;     // failures listed in the deviations ledger
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
  void known_deviation(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      known.push_back(what);
    }
  }
  bool unexpected() const { return !failures.empty(); }
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
  return s;
}

std::string split_pair(const BundleInvariants& inv) { return split_string(inv.split1) + split_string(inv.split2); }

const std::vector<std::uint32_t> kEnumerationPrimes{101, 103};
constexpr std::uint32_t kSamplePrime = 10007;

// ---------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  double total = 0, worst = 0;
  for (const auto& e : corpus()) {
    auto t0 = Clock::now();
    auto out = certify_constant_rank(e.matrix, e.quadric);
    double dt = seconds_since(t0);
    total += dt;
    worst = std::max(worst, dt);
    const auto* c = std::get_if<Certificate>(&out);
    v.check(c != nullptr, e.id + " not certified");
    if (c) {
      v.check(c->mode == "symbolic" || c->modular.size() >= 2, e.id + " modular certificate uses fewer than two primes");
      v.check(validate_certificate(e.matrix, e.quadric, *c), e.id + " certificate does not validate");
    }
    v.check(dt < 60.0, e.id + " took " + std::to_string(dt) + " s");
  }
  v.check(total < 600.0, "total " + std::to_string(total) + " s");
  std::ostringstream d;
  d << std::fixed << std::setprecision(3) << corpus().size() << " entries, slowest " << worst << " s, total " << total << " s; tolerance exact, <60 s/entry, <600 s";
  v.detail = d.str();
  return v;
}

Verdict criterion2() {
  Verdict v;
  struct Row {
    std::string id, linear, quadric;  // empty linear: identically zero
    bool known = false;
  };
  const std::vector<Row> rows{
      {"O+O(2)", "d", "a*d - b*c", true},
      {"c2=3", "b + c", "a*d - b*c"},
      {"c2=5", "c", "a*d - b*c"},
      {"c2=4 con proiezione2", "a + b", "a*c - b*d", true},
      {"c2=4 con proiezione3", "b - c", ""},
      {"O(2,1)+O(0,1)", "a", "a*b - c^2 + b*d - c*d"},
      {"O(1)^2", "", ""},
      {"O(1)^2 bis", "", ""},
      {"c2=6", "", ""},
  };
  for (const auto& r : rows) {
    const auto& A = entry(r.id).matrix;
    auto pf = pfaffian(A);
    bool ok;
    if (r.linear.empty()) ok = pf.is_zero();
    else if (r.quadric.empty()) {
      auto fac = pfaffian_factorization(A);
      ok = !fac.identically_zero && fac.remainder && fac.linear.size() == 1 && equal_up_to_unit(fac.linear[0], P(r.linear)) &&
           fac.remainder->degree() == 2;
    } else
      ok = equal_up_to_unit(pf, P(r.linear) * P(r.quadric));
    std::string what = r.id + ": expected " + (r.linear.empty() ? "0" : "(" + r.linear + ")(" + (r.quadric.empty() ? "quadric" : r.quadric) + ")") +
                       ", got " + pfaffian_string(pfaffian_factorization(A));
    if (r.known) v.known_deviation(ok, what);
    else v.check(ok, what);
  }
  v.detail = std::to_string(rows.size()) + " factor rows; tolerance exact up to unit";
  return v;
}

/// Reference values in corpus order.
struct ReferenceRow {
  std::string id;
  int c2, degY, degPhi;  // degY < 0: not stated
};

const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows{
      {"O+O(2)", 0, -1, 1},
      {"O(1)^2", 2, 6, 1},
      {"O(1)^2 bis", 2, 3, 2},
      {"c2=3", 3, 5, 1},
      {"c2=5", 5, 3, 1},
      {"c2=6", 6, 1, 2},
      {"c2=4 con proiezione2", 4, 4, 1},
      {"c2=4 con proiezione3", 4, 4, 1},
      {"O(2,0)+O(0,2)", 4, 4, 1},
      {"O(2,1)+O(0,1)", 2, 6, 1},
      {"fibrato c2=3", 3, -1, 1},
      {"O(2,0)+O(0,2) bis", 4, -1, 1},
  };
  return rows;
}

std::map<std::string, BundleInvariants>& invariants_cache() {
  static std::map<std::string, BundleInvariants> cache;
  return cache;
}

const BundleInvariants& invariants_of(const CorpusEntry& e) {
  auto& cache = invariants_cache();
  auto it = cache.find(e.id);
  if (it == cache.end()) it = cache.emplace(e.id, compute_invariants(e.matrix, e.quadric, BundleOptions{})).first;
  return it->second;
}

Verdict criterion3() {
  Verdict v;
  const auto& rows = reference_table();
  v.check(rows.size() == corpus().size(), "corpus has " + std::to_string(corpus().size()) + " entries");
  for (std::size_t i = 0; i < rows.size() && i < corpus().size(); ++i) {
    const auto& r = rows[i];
    const auto& e = corpus()[i];
    v.check(e.id == r.id, "entry " + std::to_string(i) + " is " + e.id + ", expected " + r.id);
    const auto& inv = invariants_of(e);
    v.check(inv.c2 == r.c2, r.id + ": c2 " + std::to_string(inv.c2) + " != " + std::to_string(r.c2));
    if (r.degY >= 0) v.check(inv.degY == r.degY, r.id + ": degY " + std::to_string(inv.degY) + " != " + std::to_string(r.degY));
    v.check(inv.degPhi == r.degPhi, r.id + ": degPhi " + std::to_string(inv.degPhi) + " != " + std::to_string(r.degPhi));
  }
  v.detail = "c2, degY, degPhi over " + std::to_string(rows.size()) + " entries; tolerance exact integers";
  return v;
}

Verdict criterion4() {
  Verdict v;
  auto reports = run_corpus(corpus(), CorpusRunOptions{});
  for (const auto& r : reports) {
    v.check(r.error.empty(), r.id + ": " + r.error);
    for (const auto& c : r.checks) v.check(c.pass, r.id + " " + c.name + ": expected " + c.expected + ", got " + c.actual);
  }
  auto labels = witnessed_labels(reports);
  v.check(labels.size() == all_labels().size(), std::to_string(labels.size()) + " labels witnessed");
  v.detail = std::to_string(labels.size()) + "/" + std::to_string(all_labels().size()) +
             " labels witnessed with matching splitting types; tolerance exact";
  return v;
}

Verdict criterion5() {
  Verdict v;
  constexpr int kPerSize = 200;
  Rng rng(2024);
  auto r = make_ring(QQ{}, {"s", "t"});
  for (std::size_t n : {2, 4, 6, 8}) {
    int det_fail = 0, cong_fail = 0;
    for (int k = 0; k < kPerSize; ++k) {
      auto A = random_skew(r, n, rng, 1, 2);
      auto pf = pfaffian(A);
      det_fail += !(pf * pf == laplace_det(full_matrix(A), r));
      auto M = random_invertible(n, rng);
      cong_fail += !(pfaffian(compress(A, M)) == pf.scaled(M.det()));
    }
    v.check(det_fail == 0, "size " + std::to_string(n) + ": Pf^2 != det in " + std::to_string(det_fail) + " cases");
    v.check(cong_fail == 0, "size " + std::to_string(n) + ": congruence fails in " + std::to_string(cong_fail) + " cases");
  }
  std::vector<std::string> names;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) names.push_back("x" + std::to_string(i) + std::to_string(j));
  auto g = make_ring(QQ{}, names);
  SkewMatrix<QQ> A(g, 6);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) A.set(i, j, Poly<QQ>::variable(g, idx++));
  auto adj = pfaffian_adjoint(A);
  auto pf = pfaffian(A);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Poly<QQ> s(g);
      for (std::size_t k = 0; k < 6; ++k) s += A(i, k) * adj[k][j];
      v.check(s == (i == j ? pf : Poly<QQ>(g)), "A*adj entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  v.detail = std::to_string(kPerSize) + " matrices per size 2,4,6,8 and the generic 6x6 adjoint; tolerance exact";
  return v;
}

/// Certified systems beyond the corpus: the three projections and the
/// recorded extensions of the three planes.
std::vector<std::pair<std::string, std::pair<SkewMatrix<QQ>, Quadric<QQ>>>> pipeline_systems() {
  std::vector<std::pair<std::string, std::pair<SkewMatrix<QQ>, Quadric<QQ>>>> out;
  const auto& segre = entry("O+O(2)").quadric;
  for (const auto& c : c2_four_centres()) {
    auto res = project_system(c2_four_source(abcd(), c.swap_first_block), ProjectionSpec::from_strings(c.forms, 8), segre);
    if (res.certified()) out.push_back({"projection " + c.label, {res.matrix, segre}});
  }
  for (const char* name : {"pit", "pip", "pig"}) {
    auto in = plane_from_json(load_json_file(data_path(std::string("planes/") + name + ".json")));
    if (auto r = extend_with(embed_plane(in), *in.known_extension, ExtendOptions{}, 1))
      out.push_back({std::string("extension ") + name, {r->matrix, r->quadric}});
  }
  return out;
}

Verdict criterion6() {
  Verdict v;
  auto systems = pipeline_systems();
  v.check(systems.size() == 6, "only " + std::to_string(systems.size()) + " of 6 pipeline systems certified");
  for (const auto& e : corpus()) systems.push_back({e.id, {e.matrix, e.quadric}});
  Rng rng(66);
  for (const auto& [id, sys] : systems) {
    const auto& [A, Q] = sys;
    auto inv = id.rfind("projection", 0) == 0 || id.rfind("extension", 0) == 0
                   ? compute_invariants(A, Q, BundleOptions{})
                   : invariants_of(*find_entry(corpus(), id));
    v.check(inv.c2 >= 0 && inv.c2 <= 6 && inv.c2 != 1, id + ": c2 = " + std::to_string(inv.c2));
    v.check(inv.c2 == 8 - inv.degPhi * inv.degY, id + ": c2 != 8 - degPhi*degY");
    v.check(inv.degPhi == 1 || inv.degPhi == 2, id + ": degPhi = " + std::to_string(inv.degPhi));

    auto m = modular_with_param(A, Q, kSamplePrime, rng);
    v.check(m.has_value(), id + ": no parametrization mod " + std::to_string(kSamplePrime));
    if (!m) continue;
    const auto& fld = m->Q.ring()->field();
    int bad = 0;
    for (int k = 0; k < 50; ++k) {
      auto q = m->Q.point_at(random_parameters(fld, rng));
      bad += !plucker_relations_hold(gauss_plucker(m->A, m->Q, std::span<const ModP>(q)));
    }
    v.check(bad == 0, id + ": Pluecker relations fail at " + std::to_string(bad) + "/50 points");
    for (int ruling : {1, 2})
      for (int k = 0; k < 3; ++k) {
        auto pencil = restrict_to_ruling(m->A, m->Q, ruling, {random_element(fld, rng), fld.one()});
        if (!pencil_has_constant_rank4(pencil, rng)) continue;
        v.check(common_kernel_dimension(pencil) <= 1, id + ": ruling pencil common kernel > 1");
      }
  }
  v.detail = std::to_string(systems.size()) + " certified systems, 50 Pluecker samples each; tolerance exact";
  return v;
}

Verdict criterion7() {
  Verdict v;
  struct Case {
    std::string id;
    SkewMatrix<QQ> A;
    Quadric<QQ> Q;
  };
  std::vector<Case> cases;
  for (const auto& e : corpus()) cases.push_back({e.id, e.matrix, e.quadric});
  // refuted systems, so the comparison also sees nonempty loci
  cases.push_back({"c2=6 on ad-bc", entry("c2=6").matrix, Quadric<QQ>{P("a*d - b*c"), std::nullopt}});
  cases.push_back({"O(1)^2 on ad-bc-a^2", entry("O(1)^2").matrix, Quadric<QQ>{P("a*d - b*c - a^2"), std::nullopt}});
  std::size_t compared = 0;
  for (const auto& c : cases)
    for (auto p : kEnumerationPrimes) {
      auto sys = reduce_system(c.A, c.Q, p);
      v.check(sys.has_value(), c.id + " does not reduce mod " + std::to_string(p));
      if (!sys) continue;
      bool empty = is_projectively_empty(rank_two_locus_ideal(sys->A, sys->Q.form)).empty;
      bool all4 = enumerate_ranks(sys->A, sys->Q).all_rank4;
      v.check(empty == all4, c.id + " mod " + std::to_string(p) + ": empty=" + std::to_string(empty) +
                                 " but all rank 4=" + std::to_string(all4));
      ++compared;
    }

  auto r = make_ring(QQ{}, {"x", "y", "z"});
  std::vector<Poly<QQ>> conics{parse_poly(r, "x^2 - y^2"), parse_poly(r, "y^2 - z^2")};
  auto gf = ring_over(r, PrimeField(101));
  std::size_t n = 0;
  for (const auto& pt : projective_points(101, 2))
    n += reduce_mod(conics[0], gf).eval(pt).is_zero() && reduce_mod(conics[1], gf).eval(pt).is_zero();
  long deg = zero_dim_degree(conics);
  v.check(deg == 4 && n == 4, "two conics: degree " + std::to_string(deg) + ", enumeration " + std::to_string(n));

  auto small = reduce_system(entry("O(1)^2 bis").matrix, entry("O(1)^2 bis").quadric, 101);
  v.check(small.has_value(), "O(1)^2 bis does not reduce mod 101");
  if (small) {
    const auto& fld = small->Q.ring()->field();
    auto q0 = small->Q.point_at({fld.from_int(2), fld.one(), fld.from_int(5), fld.one()});
    auto g0 = gauss_plucker(small->A, small->Q, std::span<const ModP>(q0));
    long count = 0;
    for_each_quadric_point(small->Q, [&](const std::array<ModP, 4>& pt) {
      count += gauss_plucker(small->A, small->Q, std::span<const ModP>(pt)) == g0;
    });
    long fib = gauss_fiber_degree(small->A, small->Q, std::span<const ModP>(q0), GroebnerOptions{});
    v.check(count == 2 && fib == 2, "O(1)^2 bis Gauss fiber: degree " + std::to_string(fib) + ", enumeration " +
                                        std::to_string(count));
  }
  v.detail = std::to_string(compared) + " emptiness comparisons at p = 101, 103; two conics -> 4; bis fiber -> 2; tolerance exact";
  return v;
}

Verdict criterion8() {
  Verdict v;
  const std::map<std::string, std::pair<SplitType, SplitType>> splits{
      {"IND2", {{1, 1}, {1, 1}}}, {"IND3", {{1, 1}, {0, 2}}}, {"DEC4", {{0, 2}, {0, 2}}}};
  const auto& segre = entry("O+O(2)").quadric;
  for (const auto& c : c2_four_centres()) {
    auto res = project_system(c2_four_source(abcd(), c.swap_first_block), ProjectionSpec::from_strings(c.forms, 8), segre);
    v.check(res.certified(), c.label + " centre: projection not certified");
    if (!res.certified()) continue;
    auto inv = compute_invariants(res.matrix, segre, BundleOptions{});
    const auto& [s1, s2] = splits.at(c.label);
    v.check(inv.label == c.label && inv.c2 == 4 && inv.degY == 4 && inv.degPhi == 1 &&
                same_split_multiset(inv.split1, inv.split2, s1, s2),
            c.label + " centre: got " + inv.label + " c2=" + std::to_string(inv.c2) + " degY=" + std::to_string(inv.degY) +
                " split " + split_pair(inv));
  }

  auto pit = plane_from_json(load_json_file(data_path("planes/pit.json")));
  std::vector<std::string> seeds;
  int hits = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    ExtendOptions opt;
    opt.seed = seed;
    opt.budget = 500;
    opt.target = "DEC3";
    try {
      auto r = extend_restrict(pit, opt);
      ++hits;
      seeds.push_back("seed " + std::to_string(seed) + ": draw " + std::to_string(r.draw));
    } catch (const BudgetExhausted&) {
      seeds.push_back("seed " + std::to_string(seed) + ": none");
    }
  }
  v.check(hits >= 1, "extend_restrict from Pit found no DEC3 system for seeds 1-3");
  v.detail = "three centres; Pit -> DEC3 within 500 draws (" + join(seeds) + "); tolerance exact, >=1 of 3 seeds";
  return v;
}

Verdict criterion9() {
  Verdict v;
  const std::vector<std::pair<std::string, SingularSummary>> rows{{"c2=5", {0, 4}}, {"O(2,0)+O(0,2)", {1, 4}}};
  constexpr double kLimit = 300.0;
  std::vector<std::string> parts;
  for (const auto& [id, want] : rows) {
    const auto& e = entry(id);
    BundleOptions opt;
    opt.singular = true;
    auto t0 = Clock::now();
    try {
      auto inv = compute_invariants(e.matrix, e.quadric, opt);
      double dt = seconds_since(t0);
      v.check(inv.singular.has_value(), id + ": no singular summary");
      if (inv.singular)
        v.check(inv.singular->dimension == want.dimension && inv.singular->degree == want.degree,
                id + ": got dim " + std::to_string(inv.singular->dimension) + ", deg " + std::to_string(inv.singular->degree));
      v.check(dt <= kLimit, id + " took " + std::to_string(dt) + " s");
      std::ostringstream s;
      s << std::fixed << std::setprecision(3) << id << " " << dt << " s";
      parts.push_back(s.str());
    } catch (const BudgetExceeded&) {
      parts.push_back(id + " budget-exceeded");
    }
  }
  v.detail = join(parts) + "; tolerance exact, <=300 s each, budget-exceeded allowed";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << "criterion " << (i + 1) << ": ";
    if (v.pass) line << "PASS";
    else if (!v.unexpected()) line << "FAIL (known deviation)";
    else line << "FAIL";
    line << " [" << std::fixed << std::setprecision(1) << seconds_since(t0) << " s] " << v.detail;
    if (!v.failures.empty()) line << " | failures: " << join(v.failures);
    if (!v.known.empty()) line << " | known deviations: " << join(v.known);
    std::cout << line.str() << std::endl;
    unexpected = unexpected || v.unexpected();
  }
  return unexpected ? 1 : 0;
}
