#pragma once

// Buchberger's algorithm (sugar selection, product and chain criteria) and
// the ideal operations built on it: membership, projective emptiness,
// saturation, intersection, elimination, degrees of zero-dimensional schemes
// and affine solution counts.

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfafflab/polynomial.hpp"
#include "pfafflab/univariate.hpp"

namespace pfafflab {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PositiveDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GroebnerOptions {
  /// Maximum number of S-pairs reduced before giving up.
  std::size_t max_pairs = 200000;
};

template <class F>
struct Ideal {
  RingPtr<F> ring;
  std::vector<Poly<F>> gens;

  Ideal() = default;
  Ideal(RingPtr<F> r, std::vector<Poly<F>> g) : ring(std::move(r)) {
    for (auto& p : g) {
      if (p.is_zero()) continue;
      if (p.ring() != ring && !p.ring()->same_as(*ring))
        throw std::invalid_argument("ideal generator from a different ring");
      bool dup = false;
      for (const auto& q : gens) dup = dup || q == p;
      if (!dup) gens.push_back(std::move(p));
    }
  }
};

namespace detail {

/// Fully reduces f by G (lead and tail).  G need not be a Gröbner basis.
template <class F>
Poly<F> reduce_full(Poly<F> f, const std::vector<Poly<F>>& G) {
  Poly<F> rest(f.ring());
  std::vector<typename Poly<F>::Term> done;
  while (!f.is_zero()) {
    const auto& lt = f.leading_term();
    bool reduced = false;
    for (const auto& g : G) {
      if (g.is_zero()) continue;
      if (g.leading_monomial().divides(lt.mono)) {
        auto c = lt.coeff / g.leading_coefficient();
        f -= g.times_term(lt.mono / g.leading_monomial(), c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      done.push_back(lt);
      f.drop_leading();
    }
  }
  // `done` is already in decreasing order.
  return Poly<F>::from_terms(rest.ring(), std::move(done));
}

template <class F>
Poly<F> s_polynomial(const Poly<F>& f, const Poly<F>& g) {
  Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  auto one = f.ring()->field().one();
  return f.times_term(l / f.leading_monomial(), one / f.leading_coefficient()) -
         g.times_term(l / g.leading_monomial(), one / g.leading_coefficient());
}

/// Reduced, monic, ascending basis from a Gröbner basis.
template <class F>
std::vector<Poly<F>> make_reduced(std::vector<Poly<F>> G) {
  std::vector<Poly<F>> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& mi = G[i].leading_monomial();
      const Monomial& mj = G[j].leading_monomial();
      if (mj.divides(mi) && (mi != mj || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i].monic());
  }
  std::vector<Poly<F>> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly<F>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Poly<F> tail = minimal[i];
    auto lead = Poly<F>::term(tail.ring(), tail.leading_monomial(), tail.leading_coefficient());
    tail.drop_leading();
    out.push_back((lead + reduce_full(tail, others)).monic());
  }
  const auto& ring = *out.front().ring();
  std::sort(out.begin(), out.end(), [&ring](const Poly<F>& a, const Poly<F>& b) {
    return ring.compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  return out;
}

}  // namespace detail

/// Reduced Gröbner basis for the order of the generators' ring, sorted by
/// increasing leading monomial.  The zero ideal yields an empty basis.
template <class F>
std::vector<Poly<F>> groebner_basis(const std::vector<Poly<F>>& input, const GroebnerOptions& opt = {}) {
  std::vector<Poly<F>> G;
  std::vector<std::uint32_t> sugar;
  for (const auto& f : input)
    if (!f.is_zero()) {
      G.push_back(f.monic());
      sugar.push_back(static_cast<std::uint32_t>(f.degree()));
    }
  if (G.empty()) return {};
  const RingPtr<F> ring = G.front().ring();

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t sugar;
  };
  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  std::vector<bool> alive;

  auto pair_sugar = [&](std::size_t i, std::size_t j, const Monomial& l) {
    return std::max(sugar[i] + (l.degree - G[i].leading_monomial().degree),
                    sugar[j] + (l.degree - G[j].leading_monomial().degree));
  };
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      Monomial l = lcm(G[i].leading_monomial(), G[k].leading_monomial());
      queue.push_back({i, k, l, pair_sugar(i, k, l)});
      pending.insert({i, k});
    }
  };

  // Every pair of input generators starts in the queue.
  for (std::size_t k = 0; k < G.size(); ++k) {
    alive.push_back(true);
    add_pairs_for(k);
  }

  std::size_t processed = 0;
  while (!queue.empty()) {
    auto best = std::min_element(queue.begin(), queue.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return ring->compare(a.lcm, b.lcm) < 0;
    });
    Pair pr = *best;
    queue.erase(best);
    pending.erase({pr.i, pr.j});
    if (!alive[pr.i] || !alive[pr.j]) continue;

    const Monomial& mi = G[pr.i].leading_monomial();
    const Monomial& mj = G[pr.j].leading_monomial();
    if (coprime(mi, mj)) continue;  // product criterion
    bool chain = false;             // chain criterion
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || !alive[k]) continue;
      if (!G[k].leading_monomial().divides(pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!pending.count(key(pr.i, k)) && !pending.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;

    if (++processed > opt.max_pairs)
      throw BudgetExceeded("Groebner basis exceeded budget of " + std::to_string(opt.max_pairs) + " S-pairs");

    std::vector<Poly<F>> basis;
    for (std::size_t k = 0; k < G.size(); ++k)
      if (alive[k]) basis.push_back(G[k]);
    Poly<F> h = detail::reduce_full(detail::s_polynomial(G[pr.i], G[pr.j]), basis);
    if (h.is_zero()) continue;
    h = h.monic();
    if (h.leading_monomial().degree == 0) return {Poly<F>::constant(ring, 1)};
    G.push_back(h);
    sugar.push_back(pr.sugar);
    alive.push_back(true);
    add_pairs_for(G.size() - 1);
  }

  std::vector<Poly<F>> out;
  for (std::size_t k = 0; k < G.size(); ++k)
    if (alive[k]) out.push_back(G[k]);
  // A constant input generator never enters an S-pair.
  for (const auto& g : out)
    if (g.leading_monomial().degree == 0) return {Poly<F>::constant(ring, 1)};
  return detail::make_reduced(std::move(out));
}

template <class F>
Poly<F> normal_form(const Poly<F>& f, const std::vector<Poly<F>>& gb) {
  return detail::reduce_full(f, gb);
}

template <class F>
bool ideal_membership(const Poly<F>& f, const std::vector<Poly<F>>& gens, const GroebnerOptions& opt = {}) {
  auto gb = groebner_basis(gens, opt);
  return normal_form(f, gb).is_zero();
}

template <class F>
bool is_unit_ideal(const std::vector<Poly<F>>& gb) {
  return gb.size() == 1 && gb.front().is_constant() && !gb.front().is_zero();
}

/// Krull dimension of R/(lead terms of gb): the largest set of variables
/// containing the support of no leading monomial.
template <class F>
int krull_dimension(const std::vector<Poly<F>>& gb, std::size_t nvars) {
  if (gb.empty()) return static_cast<int>(nvars);
  if (is_unit_ideal(gb)) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& g : gb) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (g.leading_monomial().exp[i]) s |= 1u << i;
    supports.push_back(s);
  }
  int best = 0;
  for (std::uint32_t set = 0; set < (1u << nvars); ++set) {
    int size = std::popcount(set);
    if (size <= best) continue;
    bool independent = true;
    for (auto s : supports)
      if ((s & ~set) == 0) { independent = false; break; }
    if (independent) best = size;
  }
  return best;
}

struct EmptinessResult {
  bool empty = false;
  /// For each variable v, the least k with v^k in I (only when empty).
  std::vector<int> witness_exponents;
};

/// Decides V(I) = ∅ in projective space for homogeneous generators.
template <class F>
EmptinessResult is_projectively_empty(const std::vector<Poly<F>>& gens, const GroebnerOptions& opt = {},
                                      std::vector<Poly<F>>* basis_out = nullptr) {
  if (gens.empty()) throw std::invalid_argument("is_projectively_empty: no generators");
  for (const auto& g : gens)
    if (!g.is_homogeneous()) throw std::invalid_argument("is_projectively_empty: generators must be homogeneous");
  const RingPtr<F>& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  auto gb = groebner_basis(gens, opt);
  if (basis_out) *basis_out = gb;
  EmptinessResult res;
  res.empty = krull_dimension(gb, n) <= 0;
  if (!res.empty) return res;

  // Witnesses: the least k with NF(v^k) = 0.  Bounded by the Macaulay bound
  // on the largest n generator degrees, which is at most the product bound.
  std::vector<int> degs;
  for (const auto& g : gens)
    if (!g.is_zero()) degs.push_back(g.degree());
  std::sort(degs.rbegin(), degs.rend());
  int macaulay = 1;
  for (std::size_t i = 0; i < std::min(degs.size(), n); ++i) macaulay += degs[i] - 1;
  macaulay = std::max(macaulay, 1);
  for (std::size_t v = 0; v < n; ++v) {
    Poly<F> pw = Poly<F>::variable(ring, v);
    const Poly<F> x = pw;
    int k = 1;
    while (!normal_form(pw, gb).is_zero()) {
      if (++k > macaulay + 1) throw std::logic_error("emptiness witness exceeds the Macaulay bound");
      pw *= x;
    }
    res.witness_exponents.push_back(k);
  }
  return res;
}

/// I ∩ k[remaining variables]; the result stays in the input ring and uses
/// none of the dropped variables.
template <class F>
std::vector<Poly<F>> eliminate(const std::vector<Poly<F>>& gens, const std::vector<std::size_t>& drop,
                               const GroebnerOptions& opt = {}) {
  if (gens.empty()) return {};
  const RingPtr<F>& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> perm;  // new position -> old variable
  std::vector<bool> dropped(n, false);
  for (auto d : drop) {
    if (d >= n) throw std::out_of_range("eliminate: variable index out of range");
    if (!dropped[d]) perm.push_back(d);
    dropped[d] = true;
  }
  const std::size_t block = perm.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!dropped[i]) perm.push_back(i);
  std::vector<std::size_t> to_new(n), to_old(n);
  std::vector<std::string> names(n);
  for (std::size_t k = 0; k < n; ++k) {
    to_new[perm[k]] = k;
    to_old[k] = perm[k];
    names[k] = ring->vars()[perm[k]];
  }
  auto elim_ring = make_ring<F>(ring->field(), names, MonomialOrder::elimination(block));
  std::vector<Poly<F>> moved;
  for (const auto& g : gens) moved.push_back(reembed(g, elim_ring, to_new));
  auto gb = groebner_basis(moved, opt);
  std::vector<Poly<F>> out;
  for (const auto& g : gb) {
    bool uses = false;
    for (std::size_t k = 0; k < block; ++k) uses = uses || g.involves(k);
    if (!uses) out.push_back(reembed(g, ring, to_old));
  }
  return out;
}

/// Adds one variable named `name` at the end of the ring (same order kind).
template <class F>
RingPtr<F> ring_with_extra_variable(const RingPtr<F>& ring, const std::string& name) {
  auto vars = ring->vars();
  std::string fresh = name;
  while (ring->index_of(fresh)) fresh += "_";
  vars.push_back(fresh);
  return make_ring<F>(ring->field(), vars, MonomialOrder::grevlex());
}

/// I : g^∞ by elimination of a tag variable from I + (1 - t g).
template <class F>
std::vector<Poly<F>> saturate_by(const std::vector<Poly<F>>& gens, const Poly<F>& g, const GroebnerOptions& opt = {}) {
  if (gens.empty()) return {};
  const RingPtr<F>& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  auto ext = ring_with_extra_variable(ring, "t_sat");
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Poly<F>> sys;
  for (const auto& f : gens) sys.push_back(reembed(f, ext, id));
  Poly<F> t = Poly<F>::variable(ext, n);
  sys.push_back(Poly<F>::constant(ext, 1) - t * reembed(g, ext, id));
  auto elim = eliminate(sys, {n}, opt);
  std::vector<std::size_t> back(n + 1);
  std::iota(back.begin(), back.end(), 0);
  back[n] = n + 1;  // never used
  std::vector<Poly<F>> out;
  for (const auto& f : elim) out.push_back(reembed(f, ring, std::span<const std::size_t>(back.data(), n)));
  return out.empty() ? out : groebner_basis(out, opt);
}

/// I : x_v^∞ for homogeneous I by the Bayer trick: with x_v last in grevlex,
/// dividing each basis element by its largest x_v power saturates.
template <class F>
std::vector<Poly<F>> saturate_by_variable(const std::vector<Poly<F>>& gens, std::size_t v,
                                          const GroebnerOptions& opt = {}) {
  if (gens.empty()) return {};
  const RingPtr<F>& ring = gens.front().ring();
  bool homogeneous = true;
  for (const auto& g : gens) homogeneous = homogeneous && g.is_homogeneous();
  if (!homogeneous) return saturate_by(gens, Poly<F>::variable(ring, v), opt);
  const std::size_t n = ring->nvars();
  std::vector<std::size_t> to_new(n), to_old(n);
  std::vector<std::string> names;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != v) { to_new[i] = k; to_old[k] = i; names.push_back(ring->vars()[i]); ++k; }
  to_new[v] = n - 1;
  to_old[n - 1] = v;
  names.push_back(ring->vars()[v]);
  auto r2 = make_ring<F>(ring->field(), names, MonomialOrder::grevlex());
  std::vector<Poly<F>> moved;
  for (const auto& g : gens) moved.push_back(reembed(g, r2, to_new));
  auto gb = groebner_basis(moved, opt);
  std::vector<Poly<F>> out;
  for (const auto& g : gb) {
    int low = std::numeric_limits<int>::max();
    for (const auto& t : g.terms()) low = std::min<int>(low, t.mono.exp[n - 1]);
    Poly<F> h = low > 0 ? *divide_exact(g, Poly<F>::variable(r2, n - 1).pow(static_cast<unsigned>(low))) : g;
    out.push_back(reembed(h, ring, to_old));
  }
  return groebner_basis(out, opt);
}

/// I ∩ J by elimination of t from tI + (1 - t)J.
template <class F>
std::vector<Poly<F>> intersect(const std::vector<Poly<F>>& I, const std::vector<Poly<F>>& J,
                               const GroebnerOptions& opt = {}) {
  if (I.empty() || J.empty()) return {};
  const RingPtr<F>& ring = I.front().ring();
  const std::size_t n = ring->nvars();
  auto ext = ring_with_extra_variable(ring, "t_int");
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  Poly<F> t = Poly<F>::variable(ext, n);
  Poly<F> one_minus_t = Poly<F>::constant(ext, 1) - t;
  std::vector<Poly<F>> sys;
  for (const auto& f : I) sys.push_back(t * reembed(f, ext, id));
  for (const auto& f : J) sys.push_back(one_minus_t * reembed(f, ext, id));
  auto elim = eliminate(sys, {n}, opt);
  std::vector<Poly<F>> out;
  for (const auto& f : elim) out.push_back(reembed(f, ring, std::span<const std::size_t>(id.data(), n)));
  return groebner_basis(out, opt);
}

/// I : J^∞ as the intersection over generators g of J of I : g^∞.
template <class F>
std::vector<Poly<F>> saturate(const std::vector<Poly<F>>& I, const std::vector<Poly<F>>& J,
                              const GroebnerOptions& opt = {}) {
  if (J.empty()) return groebner_basis(I, opt);
  std::vector<Poly<F>> acc;
  bool first = true;
  for (const auto& g : J) {
    std::vector<Poly<F>> part;
    auto var = g.size() == 1 && g.leading_coefficient().is_one() && g.leading_monomial().degree == 1
                   ? g.leading_monomial().pure_power_variable()
                   : std::nullopt;
    part = var ? saturate_by_variable(I, *var, opt) : saturate_by(I, g, opt);
    if (first) acc = std::move(part);
    else if (is_unit_ideal(acc)) acc = std::move(part);
    else if (!is_unit_ideal(part)) acc = intersect(acc, part, opt);
    first = false;
  }
  return acc;
}

/// The irrelevant ideal (x_0, ..., x_n) of a ring.
template <class F>
std::vector<Poly<F>> irrelevant_ideal(const RingPtr<F>& ring) {
  std::vector<Poly<F>> m;
  for (std::size_t i = 0; i < ring->nvars(); ++i) m.push_back(Poly<F>::variable(ring, i));
  return m;
}

/// Number of monomials of degree d outside the ideal generated by `leads`.
template <class F>
long hilbert_function(const std::vector<Poly<F>>& gb, std::size_t nvars, int d) {
  if (is_unit_ideal(gb)) return 0;
  std::vector<Monomial> leads;
  for (const auto& g : gb) leads.push_back(g.leading_monomial());
  long count = 0;
  Monomial m;
  std::function<void(std::size_t, int)> rec = [&](std::size_t var, int left) {
    if (var + 1 == nvars) {
      m.exp[var] = static_cast<std::uint16_t>(left);
      m.degree = static_cast<std::uint32_t>(d);
      for (const auto& l : leads)
        if (l.divides(m)) { m.exp[var] = 0; return; }
      ++count;
      m.exp[var] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      // Prune: a lead dividing the partial monomial divides every completion.
      bool dead = false;
      for (const auto& l : leads) {
        bool div = true;
        for (std::size_t i = 0; i < nvars && div; ++i) {
          std::uint16_t have = i <= var ? m.exp[i] : 0;
          if (l.exp[i] > have) div = false;
        }
        if (div) { dead = true; break; }
      }
      if (!dead) rec(var + 1, left - e);
    }
    m.exp[var] = 0;
  };
  if (nvars == 0) return d == 0 ? 1 : 0;
  rec(0, d);
  return count;
}

/// Degree of the zero-dimensional projective scheme V(I) for a homogeneous
/// ideal saturated by the irrelevant ideal; 0 when V(I) is empty.
template <class F>
long zero_dim_degree(const std::vector<Poly<F>>& gens, const GroebnerOptions& opt = {}) {
  if (gens.empty()) throw PositiveDimensional("zero_dim_degree: zero ideal");
  for (const auto& g : gens)
    if (!g.is_homogeneous()) throw std::invalid_argument("zero_dim_degree: generators must be homogeneous");
  const std::size_t n = gens.front().ring()->nvars();
  auto gb = groebner_basis(gens, opt);
  int dim = krull_dimension(gb, n);
  if (dim <= 0) return 0;
  if (dim > 1) throw PositiveDimensional("zero_dim_degree: scheme has dimension " + std::to_string(dim - 1));
  // For a saturated ideal a general linear form is a nonzerodivisor, so the
  // first differences of H form an Artinian Hilbert function; once H stops
  // growing it is constant.
  int max_lead = 0;
  for (const auto& g : gb) max_lead = std::max<int>(max_lead, static_cast<int>(g.leading_monomial().degree));
  long prev = hilbert_function(gb, n, 0);
  for (int d = 1;; ++d) {
    long h = hilbert_function(gb, n, d);
    if (h == prev && d > max_lead) return h;
    prev = h;
  }
}

/// Dimension of k[x]/I for a zero-dimensional (affine) ideal: the number of
/// solutions counted with multiplicity over the algebraic closure.
template <class F>
long affine_solution_count(const std::vector<Poly<F>>& gens, const GroebnerOptions& opt = {}) {
  if (gens.empty()) throw PositiveDimensional("affine_solution_count: zero ideal");
  const RingPtr<F>& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  std::vector<Poly<F>> gb;
  if (ring->order().kind == OrderKind::GRevLex) gb = groebner_basis(gens, opt);
  else {
    auto grl = make_ring<F>(ring->field(), ring->vars(), MonomialOrder::grevlex());
    std::vector<Poly<F>> moved;
    for (const auto& g : gens) moved.push_back(g.with_ring(grl));
    gb = groebner_basis(moved, opt);
  }
  if (is_unit_ideal(gb)) return 0;
  std::vector<int> bound(n, -1);
  std::vector<Monomial> leads;
  for (const auto& g : gb) {
    const Monomial& m = g.leading_monomial();
    leads.push_back(m);
    if (auto v = m.pure_power_variable()) {
      int e = m.exp[*v];
      if (bound[*v] < 0 || e < bound[*v]) bound[*v] = e;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (bound[i] < 0) throw PositiveDimensional("affine_solution_count: solution set is not finite");
  long count = 0;
  Monomial m;
  std::function<void(std::size_t)> rec = [&](std::size_t var) {
    if (var == n) {
      m.degree = 0;
      for (std::size_t i = 0; i < n; ++i) m.degree += m.exp[i];
      for (const auto& l : leads)
        if (l.divides(m)) return;
      ++count;
      return;
    }
    for (int e = 0; e < bound[var]; ++e) {
      m.exp[var] = static_cast<std::uint16_t>(e);
      rec(var + 1);
    }
    m.exp[var] = 0;
  };
  rec(0);
  return count;
}

/// Number of distinct affine solutions of a zero-dimensional ideal, via the
/// square-free part of the minimal polynomial of a linear form.  `weights`
/// should be random so the form separates the points.
template <class F>
long affine_distinct_solution_count(const std::vector<Poly<F>>& gens, const std::vector<long>& weights,
                                    const GroebnerOptions& opt = {}) {
  if (gens.empty()) throw PositiveDimensional("affine_distinct_solution_count: zero ideal");
  const RingPtr<F>& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  auto ext = ring_with_extra_variable(ring, "u_sep");
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Poly<F>> sys;
  for (const auto& g : gens) sys.push_back(reembed(g, ext, id));
  Poly<F> form = Poly<F>::variable(ext, n);
  for (std::size_t i = 0; i < n; ++i)
    form -= Poly<F>::variable(ext, i).scaled(ext->field().from_int(weights.at(i)));
  sys.push_back(form);
  std::vector<std::size_t> drop(n);
  std::iota(drop.begin(), drop.end(), 0);
  auto elim = eliminate(sys, drop, opt);
  if (elim.empty()) throw PositiveDimensional("affine_distinct_solution_count: solution set is not finite");
  if (elim.size() == 1 && elim.front().is_constant()) return 0;
  // The reduced basis of a principal ideal is its monic generator.
  const Poly<F>& m = elim.front();
  uni::Coeffs<typename F::Element> c(static_cast<std::size_t>(m.degree()) + 1, ext->field().zero());
  for (const auto& t : m.terms()) c[t.mono.exp[n]] = t.coeff;
  return uni::distinct_root_count(c, ext->field().one());
}

/// All rational solutions of a zero-dimensional system over Q.
inline std::vector<std::vector<Rational>> rational_solutions(const std::vector<Poly<RationalField>>& gens,
                                                             const GroebnerOptions& opt = {}) {
  using P = Poly<RationalField>;
  if (gens.empty()) throw PositiveDimensional("rational_solutions: zero ideal");
  const auto& ring = gens.front().ring();
  const std::size_t n = ring->nvars();
  auto lex = make_ring(RationalField{}, ring->vars(), MonomialOrder::lex());
  std::vector<P> moved;
  for (const auto& g : gens) moved.push_back(g.with_ring(lex));
  auto gb = groebner_basis(moved, opt);
  if (is_unit_ideal(gb)) return {};
  if (krull_dimension(gb, n) != 0) throw PositiveDimensional("rational_solutions: infinitely many solutions");

  std::vector<std::vector<Rational>> sols;
  std::vector<Rational> point(n, Rational(0));
  // Back substitution from the last variable; the lex basis is triangular.
  std::function<void(int)> solve = [&](int var) {
    if (var < 0) {
      sols.push_back(point);
      return;
    }
    // Specialize the basis elements whose variables are all >= var.
    uni::Coeffs<Rational> acc;
    bool have = false;
    for (const auto& g : gb) {
      bool only_tail = true;
      for (int i = 0; i < var && only_tail; ++i) only_tail = !g.involves(static_cast<std::size_t>(i));
      if (!only_tail || !g.involves(static_cast<std::size_t>(var))) continue;
      uni::Coeffs<Rational> u(static_cast<std::size_t>(g.degree_in(var)) + 1, Rational(0));
      for (const auto& t : g.terms()) {
        Rational v = t.coeff;
        for (std::size_t i = static_cast<std::size_t>(var) + 1; i < n; ++i)
          for (int e = 0; e < t.mono.exp[i]; ++e) v *= point[i];
        u[t.mono.exp[var]] += v;
      }
      uni::trim(u);
      if (u.empty()) continue;
      acc = have ? uni::gcd(acc, u) : uni::gcd(u, u);
      have = true;
    }
    if (!have) throw PositiveDimensional("rational_solutions: variable " + ring->vars()[var] + " is free");
    for (const auto& r : uni::rational_roots(acc)) {
      point[var] = r;
      solve(var - 1);
    }
  };
  solve(static_cast<int>(n) - 1);
  return sols;
}

}  // namespace pfafflab
