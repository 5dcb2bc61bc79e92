#pragma once

// Certification of constant rank 4 on a quadric, Pfaffian factorization and
// the finite-field enumeration oracle.
//
// Rank <= 4 on Q: the quadric divides Pf(A) (or Pf(A) = 0).
// Rank >= 4 on Q: Q together with the fifteen 4x4 principal sub-Pfaffians
// has no projective zero.  An empty reduction modulo p is itself a proof over
// Q (a point over Q-bar reduces to a point over F_p-bar), so modular
// certificates are sound; two primes are still required for agreement.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfafflab/groebner.hpp"
#include "pfafflab/quadric.hpp"
#include "pfafflab/skew.hpp"

namespace pfafflab {

using QQ = RationalField;
using GF = PrimeField;

struct CertifyOptions {
  enum class Mode { Auto, Rational, Modular };
  Mode mode = Mode::Auto;
  /// Primes for modular Gröbner work.
  std::vector<std::uint32_t> primes{10007, 10009};
  /// Small primes for the exhaustive point oracle.
  std::vector<std::uint32_t> enumeration_primes{101, 103};
  bool enumerate = false;
  GroebnerOptions groebner{};
};

struct EnumerationReport {
  std::uint32_t prime = 0;
  std::uint64_t points = 0;
  bool all_rank4 = true;
  /// First point found with rank != 4, with its rank.
  std::optional<std::array<ModP, 4>> witness;
  std::size_t witness_rank = 4;
};

struct ModularEvidence {
  std::uint32_t prime = 0;
  std::vector<int> witness_exponents;
  std::vector<Poly<GF>> basis;
};

struct Certificate {
  std::string mode;  // "symbolic" or "modular"
  bool pfaffian_zero = false;
  std::optional<Poly<QQ>> quotient;
  std::vector<int> witness_exponents;  // symbolic mode
  std::vector<Poly<QQ>> basis;         // symbolic mode
  std::vector<ModularEvidence> modular;
  std::vector<EnumerationReport> enumeration;
};

struct Refutation {
  enum class Condition { Divisibility, RankDrop, Disagreement };
  Condition condition = Condition::RankDrop;
  std::string message;
  std::optional<std::uint32_t> prime;
  std::optional<std::array<ModP, 4>> witness;
  std::size_t witness_rank = 0;
};

struct BudgetReport {
  std::string message;
};

using CertifyOutcome = std::variant<Certificate, Refutation, BudgetReport>;

/// Ideal of the rank <= 2 locus of A on Q.
template <class F>
std::vector<Poly<F>> rank_two_locus_ideal(const SkewMatrix<F>& A, const Poly<F>& form) {
  std::vector<Poly<F>> gens{form};
  for (auto& p : principal_sub_pfaffians(A, 4))
    if (!p.is_zero()) gens.push_back(std::move(p));
  return gens;
}

/// Reduction of the system (A, Q) modulo p, with a checked parametrization.
struct ModularSystem {
  RingPtr<GF> ring;
  SkewMatrix<GF> A;
  Quadric<GF> Q;
};

inline std::optional<ModularSystem> reduce_system(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q, std::uint32_t p) {
  try {
    GF fld(p);
    auto ring = ring_over<GF>(A.ring(), fld);
    ModularSystem sys{ring, reduce_mod(A, ring), reduce_mod(Q, ring)};
    if (sys.Q.gram().det().is_zero()) return std::nullopt;
    if (sys.Q.param) {
      try {
        validate_quadric(sys.Q, p);
      } catch (const InvalidQuadric&) {
        sys.Q.param.reset();
      }
    }
    return sys;
  } catch (const std::domain_error&) {
    return std::nullopt;  // p divides a denominator
  }
}

inline EnumerationReport enumerate_ranks(const SkewMatrix<GF>& A, const Quadric<GF>& Q) {
  EnumerationReport rep;
  rep.prime = Q.ring()->field().p;
  for_each_quadric_point(Q, [&](const std::array<ModP, 4>& pt) {
    ++rep.points;
    std::size_t r = A.rank_at(pt);
    if (r != 4) {
      if (rep.all_rank4 || r < rep.witness_rank) {
        rep.witness = pt;
        rep.witness_rank = r;
      }
      rep.all_rank4 = false;
    }
  });
  return rep;
}

namespace detail {

inline std::string point_string(const std::array<ModP, 4>& pt) {
  std::string s = "[";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? ":" : "") + pt[i].str();
  return s + "]";
}

/// Looks for an F_p point of Q where rank(A) <= max_rank.
inline std::optional<Refutation> search_witness(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q,
                                                const CertifyOptions& opt, std::size_t max_rank,
                                                Refutation::Condition cond) {
  for (auto p : opt.enumeration_primes) {
    auto sys = reduce_system(A, Q, p);
    if (!sys) continue;
    std::optional<std::array<ModP, 4>> best;
    std::size_t best_rank = 99;
    for_each_quadric_point(sys->Q, [&](const std::array<ModP, 4>& pt) {
      std::size_t r = sys->A.rank_at(pt);
      bool hit = cond == Refutation::Condition::Divisibility ? r > max_rank : r <= max_rank;
      if (hit && (!best || r < best_rank)) {
        best = pt;
        best_rank = r;
      }
    });
    if (best) {
      Refutation ref;
      ref.condition = cond;
      ref.prime = p;
      ref.witness = best;
      ref.witness_rank = best_rank;
      return ref;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Decides whether A has constant rank 4 on the smooth quadric Q.
inline CertifyOutcome certify_constant_rank(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q,
                                            const CertifyOptions& opt = {}) {
  if (A.size() != 6) throw std::invalid_argument("certify: matrix must be 6x6");
  if (A.ring()->nvars() != 4 || !Q.ring()->same_as(*A.ring()))
    throw std::invalid_argument("certify: matrix and quadric must share the same 4 variables");
  validate_quadric(Q);

  Certificate cert;
  const Poly<QQ> pf = pfaffian(A);
  if (pf.is_zero()) {
    cert.pfaffian_zero = true;
  } else {
    auto q = divide_exact(pf, Q.form);
    if (!q) {
      Refutation ref;
      if (auto w = detail::search_witness(A, Q, opt, 5, Refutation::Condition::Divisibility)) ref = *w;
      ref.condition = Refutation::Condition::Divisibility;
      ref.message = "quadric does not divide the Pfaffian: rank 6 at points of Q";
      if (ref.witness) ref.message += ", e.g. " + detail::point_string(*ref.witness) + " mod " + std::to_string(*ref.prime);
      return ref;
    }
    cert.quotient = *q;
  }

  auto rank_drop = [&](const std::string& where) -> CertifyOutcome {
    Refutation ref;
    if (auto w = detail::search_witness(A, Q, opt, 2, Refutation::Condition::RankDrop)) ref = *w;
    ref.condition = Refutation::Condition::RankDrop;
    ref.message = "rank drops below 4 on Q (" + where + ")";
    if (ref.witness)
      ref.message += ": rank " + std::to_string(ref.witness_rank) + " at " + detail::point_string(*ref.witness) +
                     " mod " + std::to_string(*ref.prime);
    return ref;
  };

  const auto gens = rank_two_locus_ideal(A, Q.form);
  bool symbolic_done = false;
  if (opt.mode != CertifyOptions::Mode::Modular) {
    try {
      std::vector<Poly<QQ>> gb;
      auto res = is_projectively_empty(gens, opt.groebner, &gb);
      if (!res.empty) return rank_drop("symbolic over QQ");
      cert.mode = "symbolic";
      cert.witness_exponents = res.witness_exponents;
      cert.basis = std::move(gb);
      symbolic_done = true;
    } catch (const BudgetExceeded& e) {
      if (opt.mode == CertifyOptions::Mode::Rational) return BudgetReport{e.what()};
    }
  }
  if (!symbolic_done) {
    if (opt.primes.size() < 2) throw std::invalid_argument("modular certification needs two primes");
    std::vector<bool> verdicts;
    for (auto p : opt.primes) {
      if (p < 101) throw std::invalid_argument("modular certification primes must be >= 101");
      auto sys = reduce_system(A, Q, p);
      if (!sys) throw std::invalid_argument("prime " + std::to_string(p) + " is bad for this system");
      std::vector<Poly<GF>> gb;
      EmptinessResult res;
      try {
        res = is_projectively_empty(rank_two_locus_ideal(sys->A, sys->Q.form), opt.groebner, &gb);
      } catch (const BudgetExceeded& e) {
        return BudgetReport{e.what()};
      }
      verdicts.push_back(res.empty);
      if (res.empty) cert.modular.push_back({p, res.witness_exponents, std::move(gb)});
    }
    bool all = std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
    bool none = std::none_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
    if (none) return rank_drop("modular");
    if (!all) {
      // Emptiness modulo any prime already proves emptiness over Q; a
      // disagreement means the other prime is bad for this system.
      Refutation ref;
      ref.condition = Refutation::Condition::Disagreement;
      ref.message = "modular emptiness verdicts disagree across primes";
      return ref;
    }
    cert.mode = "modular";
  }

  if (opt.enumerate) {
    for (auto p : opt.enumeration_primes) {
      auto sys = reduce_system(A, Q, p);
      if (!sys) continue;
      cert.enumeration.push_back(enumerate_ranks(sys->A, sys->Q));
    }
  }
  return cert;
}

/// Re-checks a certificate from its stored data only.
inline bool validate_certificate(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q, const Certificate& cert) {
  const Poly<QQ> pf = pfaffian(A);
  if (cert.pfaffian_zero) {
    if (!pf.is_zero()) return false;
  } else {
    if (!cert.quotient || *cert.quotient * Q.form != pf) return false;
  }
  const auto gens = rank_two_locus_ideal(A, Q.form);
  auto check = [](const auto& gens_f, const auto& basis, const std::vector<int>& exps) {
    if (basis.empty() || exps.size() != gens_f.front().ring()->nvars()) return false;
    for (const auto& g : gens_f)
      if (!normal_form(g, basis).is_zero()) return false;
    for (std::size_t v = 0; v < exps.size(); ++v) {
      auto pw = std::decay_t<decltype(gens_f.front())>::variable(gens_f.front().ring(), v).pow(exps[v]);
      if (!normal_form(pw, basis).is_zero()) return false;
    }
    return true;
  };
  if (cert.mode == "symbolic") return check(gens, cert.basis, cert.witness_exponents);
  if (cert.mode == "modular") {
    if (cert.modular.size() < 2) return false;
    for (const auto& ev : cert.modular) {
      auto sys = reduce_system(A, Q, ev.prime);
      if (!sys) return false;
      // The stored basis lives in its own ring object; move generators there.
      const auto& ring = ev.basis.front().ring();
      std::vector<Poly<GF>> g;
      for (const auto& f : rank_two_locus_ideal(sys->A, sys->Q.form)) g.push_back(f.with_ring(ring));
      if (!check(g, ev.basis, ev.witness_exponents)) return false;
    }
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Pfaffian factorization

struct Factorization {
  bool identically_zero = false;
  Rational unit{1};
  std::vector<Poly<QQ>> linear;  // each with first nonzero coefficient 1
  std::optional<Poly<QQ>> remainder;
};

/// f = c·g for some nonzero constant c.
template <class F>
bool equal_up_to_unit(const Poly<F>& f, const Poly<F>& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  if (f.size() != g.size()) return false;
  return f.monic() == g.monic();
}

/// Linear forms dividing a homogeneous f over Q, normalized to leading 1.
inline std::vector<Poly<QQ>> linear_factors(const Poly<QQ>& f, const GroebnerOptions& opt = {}) {
  const auto& ring = f.ring();
  const std::size_t n = ring->nvars();
  std::vector<Poly<QQ>> found;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t nu = n - i - 1;  // unknown coefficients u_j, j > i
    if (nu == 0) {
      if (divide_exact(f, Poly<QQ>::variable(ring, i))) found.push_back(Poly<QQ>::variable(ring, i));
      continue;
    }
    // Ring with unknowns u_{i+1..n-1} first, then the original variables.
    std::vector<std::string> names;
    for (std::size_t j = i + 1; j < n; ++j) names.push_back("u" + std::to_string(j));
    for (const auto& v : ring->vars()) names.push_back("X_" + v);
    auto big = make_ring(QQ{}, names);
    std::vector<Poly<QQ>> images;
    for (std::size_t k = 0; k < n; ++k) images.push_back(Poly<QQ>::variable(big, nu + k));
    Poly<QQ> sub(big);
    for (std::size_t j = i + 1; j < n; ++j)
      sub -= Poly<QQ>::variable(big, j - i - 1) * Poly<QQ>::variable(big, nu + j);
    images[i] = sub;
    Poly<QQ> g = substitute(f, images);
    // Coefficients of each monomial in the original variables.
    auto uring = make_ring(QQ{}, std::vector<std::string>(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(nu)));
    std::map<Monomial, std::vector<Poly<QQ>::Term>> groups;
    for (const auto& t : g.terms()) {
      Monomial xm, um;
      for (std::size_t k = 0; k < nu; ++k) um.exp[k] = t.mono.exp[k];
      for (std::size_t k = 0; k < n; ++k) xm.exp[k] = t.mono.exp[nu + k];
      for (std::size_t k = 0; k < nu; ++k) um.degree += um.exp[k];
      groups[xm].push_back({um, t.coeff});
    }
    std::vector<Poly<QQ>> system;
    for (auto& [xm, terms] : groups) system.push_back(Poly<QQ>::from_terms(uring, std::move(terms)));
    if (system.empty()) continue;  // f vanishes identically after substitution only if f = 0
    for (const auto& sol : rational_solutions(system, opt)) {
      Poly<QQ> ell = Poly<QQ>::variable(ring, i);
      for (std::size_t j = i + 1; j < n; ++j)
        ell += Poly<QQ>::variable(ring, j).scaled(sol[j - i - 1]);
      found.push_back(ell);
    }
  }
  return found;
}

inline Factorization factor_cubic(const Poly<QQ>& f, const GroebnerOptions& opt = {}) {
  Factorization fac;
  if (f.is_zero()) {
    fac.identically_zero = true;
    return fac;
  }
  if (!f.is_homogeneous()) throw std::invalid_argument("factor_cubic: input must be homogeneous");
  Poly<QQ> rest = f;
  while (rest.degree() > 1) {
    auto lin = linear_factors(rest, opt);
    if (lin.empty()) break;
    rest = *divide_exact(rest, lin.front());
    fac.linear.push_back(lin.front());
  }
  if (rest.degree() == 1) {
    fac.unit = rest.leading_coefficient();
    fac.linear.push_back(rest.monic());
    rest = Poly<QQ>::constant(rest.ring(), 1);
  }
  if (rest.degree() == 0) {
    fac.unit = fac.unit * rest.leading_coefficient();
  } else {
    fac.unit = rest.leading_coefficient();
    fac.remainder = rest.monic();
  }
  return fac;
}

inline Factorization pfaffian_factorization(const SkewMatrix<QQ>& A, const GroebnerOptions& opt = {}) {
  if (A.size() != 6 || !A.is_linear()) throw std::invalid_argument("pfaffian_factorization: need 6x6 linear entries");
  return factor_cubic(pfaffian(A), opt);
}

}  // namespace pfafflab
