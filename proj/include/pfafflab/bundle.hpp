#pragma once

// Invariants of the rank 2 bundle E presented by a certified system (A, Q):
// Gauss/Plücker map, splitting types on the two rulings, c2, the degrees of
// the Gauss map and of phi_E : P(E) -> Y, the degree of the threefold Y swept
// by the kernel lines, an optional summary of Sing(Y), and the case label.
//
// deg(phi_E) is the number of kernel lines through a generic point of Y.  It
// equals the Gauss degree when Y is swept once by its lines, but not in
// general: for a congruence of order 2 in a P^3 the Gauss map is injective
// while two lines pass through each point.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfafflab/certify.hpp"
#include "pfafflab/random.hpp"

namespace pfafflab {

/// Random draws did not agree, or an identity that must hold failed.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentInvariants : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using SplitType = std::pair<int, int>;

struct SingularSummary {
  int dimension = -1;       // -1: empty
  long degree = 0;          // points of a generic linear section, without multiplicity
};

struct BundleInvariants {
  int c2 = 0;
  SplitType split1{0, 0}, split2{0, 0};
  int degPhi = 0;      // degree of phi_E : P(E) -> Y
  int gaussDegree = 0;  // degree of the Gauss map Q -> G(1,5); divides degPhi
  int degY = 0;
  std::string label;
  std::vector<std::pair<int, int>> index_set;
  std::optional<SingularSummary> singular;
  std::vector<std::uint32_t> primes;
};

struct BundleOptions {
  std::vector<std::uint32_t> primes{10007, 10009};
  std::uint64_t seed = 1;
  GroebnerOptions groebner{};
  int draws = 3;
  int retries = 3;
  bool singular = false;
};

template <class F>
typename F::Element random_element(const F& fld, Rng& rng) {
  if constexpr (std::is_same_v<F, PrimeField>) return fld.from_int(rng.uniform(0, fld.p - 1));
  else return fld.from_int(rng.uniform(-30, 30));
}

template <class F>
std::array<typename F::Element, 4> random_parameters(const F& fld, Rng& rng) {
  std::array<typename F::Element, 4> pr;
  do {
    for (auto& x : pr) x = random_element(fld, rng);
  } while ((pr[0].is_zero() && pr[1].is_zero()) || (pr[2].is_zero() && pr[3].is_zero()));
  return pr;
}

// ---------------------------------------------------------------------------
// Gauss map

/// The 15 sub-Pfaffian coordinates at a point of Q, normalized.
template <class F>
std::vector<typename F::Element> gauss_plucker(const SkewMatrix<F>& A, const Quadric<F>& Q,
                                               std::span<const typename F::Element> point) {
  using K = typename F::Element;
  if (!Q.contains(point)) throw std::invalid_argument("gauss_plucker: point is not on the quadric");
  std::vector<K> v;
  for (const auto& f : plucker_forms(A)) v.push_back(f.eval(point));
  if (!normalize_projective<K>(v)) throw std::invalid_argument("gauss_plucker: rank <= 2 at the point");
  return v;
}

/// Index of p_ij (i < j) in the 15-vector.
inline std::size_t plucker_index(std::size_t i, std::size_t j) {
  std::size_t k = 0;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = r + 1; c < 6; ++c, ++k)
      if (r == i && c == j) return k;
  throw std::out_of_range("plucker_index");
}

/// p_ij p_kl - p_ik p_jl + p_il p_jk = 0 for all i < j < k < l.
template <class K>
bool plucker_relations_hold(const std::vector<K>& p) {
  auto at = [&p](std::size_t i, std::size_t j) { return p[plucker_index(i, j)]; };
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      for (std::size_t k = j + 1; k < 6; ++k)
        for (std::size_t l = k + 1; l < 6; ++l)
          if (!(at(i, j) * at(k, l) - at(i, k) * at(j, l) + at(i, l) * at(j, k)).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rulings and splitting types

template <class F>
struct RulingPencil {
  Matrix<F> B, C;
};

/// Restriction of A to a line of ruling 1 (y frozen, x = [s:t] varies) or
/// ruling 2 (x frozen, y varies); A restricted is s·B + t·C.
template <class F>
RulingPencil<F> restrict_to_ruling(const SkewMatrix<F>& A, const Quadric<F>& Q, int ruling,
                                   const std::array<typename F::Element, 2>& frozen) {
  if (!Q.param) throw std::invalid_argument("restrict_to_ruling: quadric has no parametrization");
  if (ruling != 1 && ruling != 2) throw std::invalid_argument("ruling must be 1 or 2");
  const F& fld = A.ring()->field();
  auto at = [&](const typename F::Element& s, const typename F::Element& t) {
    std::array<typename F::Element, 4> pr =
        ruling == 1 ? std::array{s, t, frozen[0], frozen[1]} : std::array{frozen[0], frozen[1], s, t};
    auto pt = Q.point_at(pr);
    return A.evaluate(pt);
  };
  return {at(fld.one(), fld.zero()), at(fld.zero(), fld.one())};
}

template <class F>
bool pencil_has_constant_rank4(const RulingPencil<F>& P, Rng& rng, int samples = 6) {
  const F& fld = P.B.field();
  for (int k = 0; k < samples; ++k) {
    auto s = random_element(fld, rng), t = random_element(fld, rng);
    if (s.is_zero() && t.is_zero()) t = fld.one();
    Matrix<F> M(fld, 6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) M(i, j) = s * P.B(i, j) + t * P.C(i, j);
    if (M.rank() != 4) return false;
  }
  return true;
}

template <class F>
std::size_t common_kernel_dimension(const RulingPencil<F>& P) {
  return Matrix<F>::vstack(P.B, P.C).kernel().size();
}

/// (0,2) iff B and C share a null vector, else (1,1).
template <class F>
SplitType splitting_type(const RulingPencil<F>& P) {
  std::size_t k = common_kernel_dimension(P);
  if (k == 0) return {1, 1};
  if (k == 1) return {0, 2};
  throw InconsistentInvariants("ruling pencil has a common kernel of dimension " + std::to_string(k));
}

/// Generic splitting type on one ruling.  Finitely many jumping lines split
/// as (0,2) where the generic line splits as (1,1), so the common kernel is
/// minimized over `lines` nondegenerate pencils at random frozen parameters.
template <class F>
SplitType splitting_type_on_ruling(const SkewMatrix<F>& A, const Quadric<F>& Q, int ruling, Rng& rng,
                                   int max_tries = 20, int lines = 3) {
  const F& fld = A.ring()->field();
  std::optional<SplitType> best;
  int found = 0;
  for (int tries = 0; tries < max_tries && found < lines; ++tries) {
    std::array<typename F::Element, 2> frozen{random_element(fld, rng), random_element(fld, rng)};
    if (frozen[0].is_zero() && frozen[1].is_zero()) continue;
    auto pencil = restrict_to_ruling(A, Q, ruling, frozen);
    if (!pencil_has_constant_rank4(pencil, rng)) continue;
    auto s = splitting_type(pencil);
    if (!best || s == SplitType{1, 1}) best = s;
    ++found;
  }
  if (!best) throw InstabilityError("no nondegenerate ruling pencil found on ruling " + std::to_string(ruling));
  return *best;
}

// ---------------------------------------------------------------------------
// c2, deg(phi), deg(Y)

/// Degree of the zero scheme of a generic section: V(Q, vᵀ·adj(A)).
template <class F>
long section_zero_count(const SkewMatrix<F>& A, const Quadric<F>& Q, const std::vector<typename F::Element>& v,
                        const GroebnerOptions& opt) {
  auto P = pfaffian_adjoint(A);
  std::vector<Poly<F>> gens{Q.form};
  for (std::size_t c = 0; c < 6; ++c) {
    Poly<F> e(A.ring());
    for (std::size_t r = 0; r < 6; ++r)
      if (!v[r].is_zero()) e += P[r][c].scaled(v[r]);
    if (!e.is_zero()) gens.push_back(e);
  }
  auto sat = saturate(gens, irrelevant_ideal(A.ring()), opt);
  return zero_dim_degree(sat, opt);
}

template <class F>
int second_chern(const SkewMatrix<F>& A, const Quadric<F>& Q, Rng& rng, const BundleOptions& opt) {
  std::optional<long> value;
  for (int k = 0; k < opt.draws; ++k) {
    std::vector<typename F::Element> v(6);
    for (auto& x : v) x = random_element(A.ring()->field(), rng);
    long c = section_zero_count(A, Q, v, opt.groebner);
    if (value && *value != c)
      throw InstabilityError("c2 draws disagree: " + std::to_string(*value) + " vs " + std::to_string(c));
    value = c;
  }
  return static_cast<int>(*value);
}

/// Degree of the fiber of the Gauss map through q0: V(Q, rank[P(z); P(q0)] <= 1).
template <class F>
long gauss_fiber_degree(const SkewMatrix<F>& A, const Quadric<F>& Q, std::span<const typename F::Element> q0,
                        const GroebnerOptions& opt) {
  auto forms = plucker_forms(A);
  std::vector<typename F::Element> c;
  for (const auto& f : forms) c.push_back(f.eval(q0));
  std::size_t pivot = 0;
  while (pivot < c.size() && c[pivot].is_zero()) ++pivot;
  if (pivot == c.size()) throw std::invalid_argument("gauss_fiber_degree: base point has rank <= 2");
  std::vector<Poly<F>> gens{Q.form};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (i == pivot) continue;
    Poly<F> m = forms[i].scaled(c[pivot]) - forms[pivot].scaled(c[i]);
    if (!m.is_zero()) gens.push_back(m);
  }
  auto sat = saturate(gens, irrelevant_ideal(A.ring()), opt);
  try {
    return zero_dim_degree(sat, opt);
  } catch (const PositiveDimensional&) {
    throw InconsistentInvariants("Gauss map has a positive-dimensional fiber: rank is not constant on Q");
  }
}

template <class F>
int gauss_degree(const SkewMatrix<F>& A, const Quadric<F>& Q, Rng& rng, const BundleOptions& opt) {
  std::optional<long> value;
  for (int k = 0; k < opt.draws; ++k) {
    auto q0 = Q.point_at(random_parameters(A.ring()->field(), rng));
    long d = gauss_fiber_degree<F>(A, Q, q0, opt.groebner);
    if (value && *value != d)
      throw InstabilityError("Gauss degree draws disagree: " + std::to_string(*value) + " vs " + std::to_string(d));
    value = d;
  }
  if (*value != 1 && *value != 2)
    throw InconsistentInvariants("Gauss map degree " + std::to_string(*value) + " is not 1 or 2");
  return static_cast<int>(*value);
}

/// Degree of the fiber of phi_E : P(E) -> Y over z0: V(Q, A(q)·z0).
template <class F>
long kernel_fiber_degree(const SkewMatrix<F>& A, const Quadric<F>& Q, const std::vector<typename F::Element>& z0,
                         const GroebnerOptions& opt) {
  std::vector<Poly<F>> gens{Q.form};
  for (std::size_t r = 0; r < 6; ++r) {
    Poly<F> e(A.ring());
    for (std::size_t c = 0; c < 6; ++c)
      if (r != c && !z0[c].is_zero()) e += A(r, c).scaled(z0[c]);
    if (!e.is_zero()) gens.push_back(e);
  }
  auto sat = saturate(gens, irrelevant_ideal(A.ring()), opt);
  try {
    return zero_dim_degree(sat, opt);
  } catch (const PositiveDimensional&) {
    throw InstabilityError("kernel point lies on infinitely many kernel lines");
  }
}

/// deg(phi_E): kernel lines through a generic point of Y, counted with
/// multiplicity.  The point is a random vector in ker A(q0) for random q0.
template <class F>
int phi_degree(const SkewMatrix<F>& A, const Quadric<F>& Q, Rng& rng, const BundleOptions& opt) {
  const F& fld = A.ring()->field();
  std::optional<long> value;
  for (int k = 0; k < opt.draws; ++k) {
    auto q0 = Q.point_at(random_parameters(fld, rng));
    auto ker = A.evaluate(q0).kernel();
    if (ker.size() != 2) throw InconsistentInvariants("kernel at a point of Q is not 2-dimensional");
    auto l0 = random_element(fld, rng), l1 = random_element(fld, rng);
    if (l0.is_zero() && l1.is_zero()) l0 = fld.one();
    std::vector<typename F::Element> z0(6);
    for (std::size_t i = 0; i < 6; ++i) z0[i] = l0 * ker[0][i] + l1 * ker[1][i];
    long d = kernel_fiber_degree(A, Q, z0, opt.groebner);
    if (value && *value != d)
      throw InstabilityError("deg(phi) draws disagree: " + std::to_string(*value) + " vs " + std::to_string(d));
    value = d;
  }
  if (*value != 1 && *value != 2) throw InconsistentInvariants("deg(phi) = " + std::to_string(*value) + " is not 1 or 2");
  return static_cast<int>(*value);
}

/// Random affine chart data for the incidence count.
template <class F>
struct IncidenceChart {
  std::array<typename F::Element, 4> mx, my;  // Möbius maps [1:s] -> x, [1:t] -> y
  std::array<std::vector<typename F::Element>, 3> w;  // plane w0 + u1 w1 + u2 w2 in P^5
};

/// N = #{(q, z) : A(q) z = 0, z in a random plane of P^5}, counted in the
/// chart (s, t, u1, u2).
template <class F>
long incidence_count(const SkewMatrix<F>& A, const Quadric<F>& Q, const IncidenceChart<F>& ch,
                     const GroebnerOptions& opt) {
  if (!Q.param) throw std::invalid_argument("incidence_count: quadric has no parametrization");
  const F& fld = A.ring()->field();
  auto R = make_ring<F>(fld, {"s", "t", "u1", "u2"});
  using P = Poly<F>;
  P s = P::variable(R, 0), t = P::variable(R, 1), one = P::constant(R, 1);
  // x = mx·(1, s), y = my·(1, t)
  P x0 = one.scaled(ch.mx[0]) + s.scaled(ch.mx[1]), x1 = one.scaled(ch.mx[2]) + s.scaled(ch.mx[3]);
  P y0 = one.scaled(ch.my[0]) + t.scaled(ch.my[1]), y1 = one.scaled(ch.my[2]) + t.scaled(ch.my[3]);
  std::vector<P> pimg{x0, x1, y0, y1};
  std::vector<P> qimg;
  for (const auto& f : *Q.param) qimg.push_back(substitute(f, pimg));
  std::vector<P> z(6, P(R));
  for (std::size_t i = 0; i < 6; ++i)
    z[i] = one.scaled(ch.w[0][i]) + P::variable(R, 2).scaled(ch.w[1][i]) + P::variable(R, 3).scaled(ch.w[2][i]);
  std::vector<P> eqs;
  for (std::size_t r = 0; r < 6; ++r) {
    P e(R);
    for (std::size_t c = 0; c < 6; ++c) {
      if (r == c) continue;
      P entry = substitute(A(r, c), qimg);
      if (!entry.is_zero()) e += entry * z[c];
    }
    if (!e.is_zero()) eqs.push_back(e);
  }
  return affine_solution_count(eqs, opt);
}

template <class F>
IncidenceChart<F> random_chart(const F& fld, Rng& rng) {
  IncidenceChart<F> ch;
  auto mobius = [&](std::array<typename F::Element, 4>& m) {
    do {
      for (auto& x : m) x = random_element(fld, rng);
    } while ((m[0] * m[3] - m[1] * m[2]).is_zero());
  };
  mobius(ch.mx);
  mobius(ch.my);
  for (auto& v : ch.w) {
    v.resize(6);
    for (auto& x : v) x = random_element(fld, rng);
  }
  return ch;
}

/// deg(Y) = N / deg(phi), with N = 8 - c2 enforced; charts are re-drawn
/// up to `retries` times.
template <class F>
int threefold_degree(const SkewMatrix<F>& A, const Quadric<F>& Q, int degPhi, int c2, Rng& rng,
                     const BundleOptions& opt, long* n_out = nullptr) {
  std::string last;
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    auto ch = random_chart(A.ring()->field(), rng);
    long n;
    try {
      n = incidence_count(A, Q, ch, opt.groebner);
    } catch (const PositiveDimensional& e) {
      last = e.what();
      continue;
    }
    if (n_out) *n_out = n;
    if (n % degPhi != 0) {
      last = "N = " + std::to_string(n) + " not divisible by deg(phi) = " + std::to_string(degPhi);
      continue;
    }
    if (n != 8 - c2) {
      last = "N = " + std::to_string(n) + " but 8 - c2 = " + std::to_string(8 - c2);
      continue;
    }
    return static_cast<int>(n / degPhi);
  }
  throw InstabilityError("threefold degree: " + last);
}

// ---------------------------------------------------------------------------
// Singular locus of Y

/// Ideal of Y in P^5 (variables z0..z5), by eliminating a chart of Q.
template <class F>
std::vector<Poly<F>> threefold_ideal(const SkewMatrix<F>& A, const Quadric<F>& Q, Rng& rng,
                                     const GroebnerOptions& opt, RingPtr<F>* ring_out) {
  const F& fld = A.ring()->field();
  auto R = make_ring<F>(fld, {"s", "t", "z0", "z1", "z2", "z3", "z4", "z5"});
  using P = Poly<F>;
  auto ch = random_chart(fld, rng);
  P s = P::variable(R, 0), t = P::variable(R, 1), one = P::constant(R, 1);
  std::vector<P> pimg{one.scaled(ch.mx[0]) + s.scaled(ch.mx[1]), one.scaled(ch.mx[2]) + s.scaled(ch.mx[3]),
                      one.scaled(ch.my[0]) + t.scaled(ch.my[1]), one.scaled(ch.my[2]) + t.scaled(ch.my[3])};
  std::vector<P> qimg;
  for (const auto& f : *Q.param) qimg.push_back(substitute(f, pimg));
  std::vector<P> eqs;
  for (std::size_t r = 0; r < 6; ++r) {
    P e(R);
    for (std::size_t c = 0; c < 6; ++c)
      if (r != c) e += substitute(A(r, c), qimg) * P::variable(R, 2 + c);
    if (!e.is_zero()) eqs.push_back(e);
  }
  auto elim = eliminate(eqs, {0, 1}, opt);
  auto Z = make_ring<F>(fld, {"z0", "z1", "z2", "z3", "z4", "z5"});
  std::vector<std::size_t> map{99, 99, 0, 1, 2, 3, 4, 5};
  std::vector<P> out;
  for (const auto& g : elim) out.push_back(reembed(g, Z, map));
  if (ring_out) *ring_out = Z;
  return out;
}

/// Dimension and degree of Sing(Y).  For a generic linear space L of
/// dimension r, Sing(Y) ∩ L = Sing(Y ∩ L) (Bertini), and Y ∩ L has
/// codimension 2 in L, so the singular points are cut out by the 2x2 minors
/// of the Jacobian in the coordinates of L.  The least r with a nonempty
/// answer is 5 - dim Sing(Y), and there the points are counted.
template <class F>
SingularSummary singular_summary(const SkewMatrix<F>& A, const Quadric<F>& Q, Rng& rng, const GroebnerOptions& opt) {
  using P = Poly<F>;
  RingPtr<F> Z;
  auto IY = threefold_ideal(A, Q, rng, opt, &Z);
  const F& fld = Z->field();
  SingularSummary out;
  // Y is reduced of dimension 3, so its singular locus has dimension <= 2.
  for (std::size_t r = 3; r <= 5; ++r) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= r; ++i) names.push_back("t" + std::to_string(i));
    auto T = make_ring<F>(fld, names);
    // Affine chart z = p0 + t1 p1 + ... + tr pr of a random r-plane.
    std::vector<P> images;
    for (std::size_t v = 0; v < 6; ++v) {
      P z = P::constant(T, random_element(fld, rng));
      for (std::size_t i = 0; i < r; ++i) z += P::variable(T, i).scaled(random_element(fld, rng));
      images.push_back(z);
    }
    std::vector<P> eqs;
    for (const auto& g : IY) {
      P h = substitute(g, images);
      if (!h.is_zero()) eqs.push_back(h);
    }
    auto diff = [&](const P& f, std::size_t v) {
      std::vector<typename P::Term> terms;
      for (const auto& t : f.terms()) {
        if (t.mono.exp[v] == 0) continue;
        Monomial m = t.mono;
        m.exp[v] -= 1;
        m.degree -= 1;
        terms.push_back({m, t.coeff * fld.from_int(t.mono.exp[v])});
      }
      return P::from_terms(T, std::move(terms));
    };
    std::vector<std::vector<P>> J;
    for (const auto& g : eqs) {
      std::vector<P> row;
      for (std::size_t v = 0; v < r; ++v) row.push_back(diff(g, v));
      J.push_back(row);
    }
    // A random 5 x m combination of the rows drops rank only where J does,
    // away from a locus of codimension 4.
    if (J.size() > 5) {
      std::vector<std::vector<P>> mixed(5, std::vector<P>(r, P(T)));
      for (auto& row : mixed)
        for (const auto& src : J) {
          auto c = random_element(fld, rng);
          for (std::size_t v = 0; v < r; ++v) row[v] += src[v].scaled(c);
        }
      J = std::move(mixed);
    }
    std::vector<P> gens = eqs;
    for (std::size_t a = 0; a < J.size(); ++a)
      for (std::size_t b = a + 1; b < J.size(); ++b)
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = i + 1; j < r; ++j) {
            P m = J[a][i] * J[b][j] - J[a][j] * J[b][i];
            if (!m.is_zero()) gens.push_back(m);
          }
    auto gb = groebner_basis(gens, opt);
    if (is_unit_ideal(gb)) continue;
    if (krull_dimension(gb, r) != 0)
      throw InstabilityError("singular locus slice is not finite; the slicing plane was not generic");
    out.dimension = static_cast<int>(5 - r);
    std::vector<long> weights;
    for (std::size_t v = 0; v < r; ++v) weights.push_back(rng.uniform(1, 1000000));
    out.degree = affine_distinct_solution_count(gb, weights, opt);
    return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification

struct CaseInfo {
  std::string label;
  std::vector<std::pair<int, int>> index_set;
};

/// Decision table on (c2, multiset of splitting types).
inline CaseInfo classify(int c2, SplitType s1, SplitType s2) {
  auto legal = [](SplitType s) { return s == SplitType{1, 1} || s == SplitType{0, 2}; };
  if (!legal(s1) || !legal(s2)) throw InconsistentInvariants("splitting types must be (1,1) or (0,2)");
  int balanced = (s1 == SplitType{1, 1}) + (s2 == SplitType{1, 1});
  auto bad = [&]() {
    return InconsistentInvariants("no case with c2 = " + std::to_string(c2) + " and splitting types (" +
                                  std::to_string(s1.first) + "," + std::to_string(s1.second) + "), (" +
                                  std::to_string(s2.first) + "," + std::to_string(s2.second) + ")");
  };
  switch (c2) {
    case 0:
      if (balanced != 0) throw bad();
      return {"DEC1", {{2, 2}}};
    case 2:
      if (balanced == 2) return {"DEC2", {{1, 1}}};
      if (balanced == 1) return {"DEC3", {{2, 1}, {1, 2}}};
      throw bad();
    case 3:
      if (balanced != 2) throw bad();
      return {"IND1", {{1, 1}}};
    case 4:
      if (balanced == 2) return {"IND2", {{1, 1}}};
      if (balanced == 1) return {"IND3", {{1, 0}, {0, 1}}};
      return {"DEC4", {{2, 0}, {0, 2}}};
    case 5:
      return {"IND4", {{1, 0}, {0, 1}}};
    case 6:
      return {"IND5", {{0, 0}}};
    default:
      throw bad();
  }
}

inline const std::vector<std::string>& all_labels() {
  static const std::vector<std::string> labels{"DEC1", "DEC2", "DEC3", "DEC4", "IND1",
                                               "IND2", "IND3", "IND4", "IND5"};
  return labels;
}

/// The system reduced modulo p with a parametrization over F_p (shipped or
/// constructed), or nothing if p is unsuitable.
inline std::optional<ModularSystem> modular_with_param(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q,
                                                       std::uint32_t p, Rng& rng) {
  auto sys = reduce_system(A, Q, p);
  if (!sys) return std::nullopt;
  if (!sys->Q.param) {
    for (int k = 0; k < 5 && !sys->Q.param; ++k) {
      sys->Q.param = parametrize_mod_p(sys->Q, rng);
      if (sys->Q.param) {
        try {
          validate_quadric(sys->Q, p);
        } catch (const InvalidQuadric&) {
          sys->Q.param.reset();
        }
      }
    }
    if (!sys->Q.param) return std::nullopt;
  }
  return sys;
}

/// Primes >= start suitable for (A, Q), `count` of them.
inline std::vector<std::uint32_t> suitable_primes(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q, std::size_t count,
                                                  std::uint32_t start = 10007) {
  std::vector<std::uint32_t> out;
  Rng rng(start);
  for (std::uint32_t p = next_prime(start); out.size() < count; p = next_prime(p + 1))
    if (modular_with_param(A, Q, p, rng)) out.push_back(p);
  return out;
}

/// Full invariant computation for a certified system.  Numeric invariants
/// are computed modulo every prime in opt.primes and must agree.
inline BundleInvariants compute_invariants(const SkewMatrix<QQ>& A, const Quadric<QQ>& Q, const BundleOptions& opt) {
  BundleInvariants inv;
  Rng rng(opt.seed);

  // Splitting types: over Q when a rational parametrization exists.
  if (Q.param) {
    inv.split1 = splitting_type_on_ruling(A, Q, 1, rng);
    inv.split2 = splitting_type_on_ruling(A, Q, 2, rng);
  }

  std::optional<int> c2, dphi, dgauss, dy;
  bool have_split = Q.param.has_value();
  for (auto p : opt.primes) {
    Rng prng(Rng::sub_seed(opt.seed, p));
    auto sys = modular_with_param(A, Q, p, prng);
    if (!sys) throw std::invalid_argument("prime " + std::to_string(p) + " is unsuitable for this system");
    int c = second_chern(sys->A, sys->Q, prng, opt);
    int g = gauss_degree(sys->A, sys->Q, prng, opt);
    int f = phi_degree(sys->A, sys->Q, prng, opt);
    if (f % g != 0)
      throw InconsistentInvariants("Gauss degree " + std::to_string(g) + " does not divide deg(phi) " + std::to_string(f));
    int y = threefold_degree(sys->A, sys->Q, f, c, prng, opt);
    if (c2 && (*c2 != c || *dphi != f || *dgauss != g || *dy != y))
      throw InstabilityError("invariants disagree across primes");
    c2 = c;
    dphi = f;
    dgauss = g;
    dy = y;
    if (!have_split) {
      inv.split1 = splitting_type_on_ruling(sys->A, sys->Q, 1, prng);
      inv.split2 = splitting_type_on_ruling(sys->A, sys->Q, 2, prng);
      have_split = true;
    }
    inv.primes.push_back(p);
  }
  inv.c2 = *c2;
  inv.degPhi = *dphi;
  inv.gaussDegree = *dgauss;
  inv.degY = *dy;
  if (inv.c2 < 0 || inv.c2 > 6 || inv.c2 == 1) throw InconsistentInvariants("c2 = " + std::to_string(inv.c2));
  auto info = classify(inv.c2, inv.split1, inv.split2);
  inv.label = info.label;
  inv.index_set = info.index_set;

  if (opt.singular) {
    Rng srng(Rng::sub_seed(opt.seed, 0x5109));
    auto sys = modular_with_param(A, Q, opt.primes.front(), srng);
    inv.singular = singular_summary(sys->A, sys->Q, srng, opt.groebner);
  }
  return inv;
}

inline bool same_split_multiset(SplitType a1, SplitType a2, SplitType b1, SplitType b2) {
  return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

}  // namespace pfafflab
