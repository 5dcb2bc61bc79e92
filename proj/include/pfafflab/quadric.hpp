#pragma once

// Quadric surfaces in P^3, their P^1 x P^1 parametrizations and point
// enumeration over prime fields.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pfafflab/linalg.hpp"
#include "pfafflab/polynomial.hpp"
#include "pfafflab/random.hpp"

namespace pfafflab {

/// Parameter ring k[x0, x1, y0, y1] for the bidegree (1,1) parametrization.
template <class F>
RingPtr<F> parameter_ring(const F& field) {
  return make_ring<F>(field, {"x0", "x1", "y0", "y1"});
}

template <class F>
using Parametrization = std::array<Poly<F>, 4>;

template <class F>
struct Quadric {
  using K = typename F::Element;

  Poly<F> form;
  std::optional<Parametrization<F>> param;

  const RingPtr<F>& ring() const { return form.ring(); }

  /// Symmetric matrix G with form(z) = zᵀ G z.
  Matrix<F> gram() const {
    const F& fld = ring()->field();
    Matrix<F> g(fld, 4, 4);
    K half = fld.from_int(2).inverse();
    for (const auto& t : form.terms()) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < 4; ++i)
        for (int e = 0; e < t.mono.exp[i]; ++e) idx.push_back(i);
      if (idx.size() != 2) throw std::invalid_argument("quadric form is not homogeneous of degree 2");
      if (idx[0] == idx[1]) g(idx[0], idx[0]) += t.coeff;
      else {
        g(idx[0], idx[1]) += t.coeff * half;
        g(idx[1], idx[0]) += t.coeff * half;
      }
    }
    return g;
  }

  bool contains(std::span<const K> point) const { return form.eval(point).is_zero(); }

  /// Image of parameter values (x0, x1, y0, y1).
  std::array<K, 4> point_at(const std::array<K, 4>& params) const {
    if (!param) throw std::logic_error("quadric has no parametrization");
    std::array<K, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = (*param)[i].eval(params);
    return out;
  }
};

/// Raised when a quadric fails its structural checks.
class InvalidQuadric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scales a nonzero vector so its first nonzero coordinate is 1.
template <class K>
bool normalize_projective(std::span<K> v) {
  for (auto& x : v)
    if (!x.is_zero()) {
      K inv = x.inverse();
      for (auto& y : v) y *= inv;
      return true;
    }
  return false;
}

template <class K>
bool proportional(std::vector<K> a, std::vector<K> b) {
  if (!normalize_projective<K>(a) || !normalize_projective<K>(b)) return false;
  return a == b;
}

/// Checks smoothness and, when present, that the parametrization lands on the
/// quadric, has bidegree (1,1) and separates 5 random parameter pairs.
template <class F>
void validate_quadric(const Quadric<F>& q, std::uint64_t seed = 1) {
  using K = typename F::Element;
  if (q.form.is_zero() || q.form.degree() != 2 || !q.form.is_homogeneous())
    throw InvalidQuadric("quadric form must be a nonzero homogeneous quadratic");
  if (q.ring()->nvars() != 4) throw InvalidQuadric("quadric must live in 4 variables");
  if (q.gram().det().is_zero()) throw InvalidQuadric("quadric is singular (det of Gram matrix is 0)");
  if (!q.param) return;
  const auto& par = *q.param;
  for (const auto& f : par) {
    if (f.ring()->nvars() != 4) throw InvalidQuadric("parametrization must use x0, x1, y0, y1");
    for (const auto& t : f.terms())
      if (t.mono.exp[0] + t.mono.exp[1] != 1 || t.mono.exp[2] + t.mono.exp[3] != 1)
        throw InvalidQuadric("parametrization is not of bidegree (1,1)");
  }
  std::vector<Poly<F>> images(par.begin(), par.end());
  if (!substitute(q.form, images).is_zero()) throw InvalidQuadric("parametrization does not satisfy the quadric");

  Rng rng(seed);
  const F& fld = q.ring()->field();
  std::vector<std::vector<K>> seen;
  std::vector<std::array<K, 4>> params;
  for (int trial = 0; seen.size() < 5 && trial < 100; ++trial) {
    std::array<K, 4> pr;
    for (auto& x : pr) x = fld.from_int(rng.uniform(-50, 50));
    bool repeat = false;  // distinct parameters in P^1 x P^1
    for (const auto& o : params)
      repeat = repeat || (proportional<K>({o[0], o[1]}, {pr[0], pr[1]}) &&
                          proportional<K>({o[2], o[3]}, {pr[2], pr[3]}));
    if (repeat || (pr[0].is_zero() && pr[1].is_zero()) || (pr[2].is_zero() && pr[3].is_zero())) continue;
    auto img = q.point_at(pr);
    std::vector<K> v(img.begin(), img.end());
    bool zero = true;
    for (const auto& x : v) zero = zero && x.is_zero();
    if (zero) throw InvalidQuadric("parametrization vanishes at a parameter pair");
    for (const auto& o : seen)
      if (proportional<K>(o, v)) throw InvalidQuadric("parametrization is not generically injective");
    seen.push_back(v);
    params.push_back(pr);
  }
}

/// Square root modulo an odd prime (Tonelli-Shanks), if one exists.
inline std::optional<ModP> sqrt_mod(const ModP& a) {
  const std::uint64_t p = a.modulus();
  if (a.is_zero()) return a;
  auto pw = [p](std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  if (p == 2) return a;
  if (pw(a.value(), (p - 1) / 2) != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  std::uint64_t z = 2;
  while (pw(z, (p - 1) / 2) != p - 1) ++z;
  std::uint64_t m = s, c = pw(z, q), t = pw(a.value(), q), r = pw(a.value(), (q + 1) / 2);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) { tt = tt * tt % p; ++i; }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + i + 1 < m; ++k) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return ModP(static_cast<std::int64_t>(r), static_cast<std::uint32_t>(p));
}

/// A P^1 x P^1 parametrization of a smooth quadric over F_p built from a
/// rational point and the two lines in its tangent plane.  Absent when the
/// quadric is not split over F_p (non-square discriminant).
inline std::optional<Parametrization<PrimeField>> parametrize_mod_p(const Quadric<PrimeField>& q, Rng& rng) {
  using K = ModP;
  const PrimeField& fld = q.ring()->field();
  const Matrix<PrimeField> G = q.gram();
  if (G.det().is_zero()) return std::nullopt;
  if (!sqrt_mod(G.det())) return std::nullopt;  // elliptic quadric: no F_p-lines
  using Vec = std::array<K, 4>;
  auto B = [&G, &fld](const Vec& u, const Vec& v) {
    K s = fld.zero();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) s += u[i] * G(i, j) * v[j];
    return s;
  };
  auto comb = [&fld](const K& a, const Vec& u, const K& b, const Vec& v) {
    Vec w;
    for (std::size_t i = 0; i < 4; ++i) w[i] = a * u[i] + b * v[i];
    (void)fld;
    return w;
  };
  auto rnd = [&]() {
    Vec v;
    for (auto& x : v) x = fld.from_int(rng.uniform(0, fld.p - 1));
    return v;
  };
  auto is_zero = [](const Vec& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero() && v[3].is_zero(); };

  // 1. A point: intersect a random line u + t v with Q.
  std::optional<Vec> p0;
  for (int tries = 0; tries < 200 && !p0; ++tries) {
    Vec u = rnd(), v = rnd();
    K a = B(v, v), b = B(u, v) + B(u, v), c = B(u, u);
    if (c.is_zero() && !is_zero(u)) { p0 = u; break; }
    if (a.is_zero()) continue;
    auto root = sqrt_mod(b * b - fld.from_int(4) * a * c);
    if (!root) continue;
    K t = (-b + *root) / (a + a);
    Vec w = comb(fld.one(), u, t, v);
    if (!is_zero(w)) p0 = w;
  }
  if (!p0) return std::nullopt;

  // 2. Basis of the tangent plane P0^⊥ and the two isotropic directions in it.
  Matrix<PrimeField> row(fld, 1, 4);
  Vec gp;
  for (std::size_t j = 0; j < 4; ++j) {
    gp[j] = fld.zero();
    for (std::size_t i = 0; i < 4; ++i) gp[j] += (*p0)[i] * G(i, j);
    row(0, j) = gp[j];
  }
  auto tangent = row.kernel();  // 3 vectors, P0 in their span
  std::vector<Vec> comp;
  {
    // Pick two kernel vectors independent modulo P0.
    std::vector<Vec> cand;
    for (auto& k : tangent) cand.push_back({k[0], k[1], k[2], k[3]});
    for (std::size_t i = 0; i < cand.size() && comp.size() < 2; ++i) {
      Matrix<PrimeField> m(fld, comp.size() + 2, 4);
      for (std::size_t c = 0; c < 4; ++c) {
        m(0, c) = (*p0)[c];
        for (std::size_t r = 0; r < comp.size(); ++r) m(r + 1, c) = comp[r][c];
        m(comp.size() + 1, c) = cand[i][c];
      }
      if (m.rank() == comp.size() + 2) comp.push_back(cand[i]);
    }
  }
  if (comp.size() != 2) return std::nullopt;
  const Vec& w1 = comp[0];
  const Vec& w2 = comp[1];
  K A = B(w1, w1), Bc = B(w1, w2) + B(w1, w2), C = B(w2, w2);
  std::array<std::pair<K, K>, 2> dirs;
  if (A.is_zero()) {
    if (Bc.is_zero()) return std::nullopt;
    dirs = {std::make_pair(fld.one(), fld.zero()), std::make_pair(-C, Bc)};
  } else {
    auto root = sqrt_mod(Bc * Bc - fld.from_int(4) * A * C);
    if (!root || root->is_zero()) return std::nullopt;
    dirs = {std::make_pair((-Bc + *root) / (A + A), fld.one()), std::make_pair((-Bc - *root) / (A + A), fld.one())};
  }
  Vec l1 = comb(dirs[0].first, w1, dirs[0].second, w2);
  Vec l2 = comb(dirs[1].first, w1, dirs[1].second, w2);
  K beta = B(l1, l2);
  if (beta.is_zero()) return std::nullopt;

  // 3. v11: isotropic, orthogonal to l1 and l2, with B(v11, P0) = -B(l1, l2).
  Matrix<PrimeField> two(fld, 2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    two(0, j) = fld.zero();
    two(1, j) = fld.zero();
    for (std::size_t i = 0; i < 4; ++i) {
      two(0, j) += l1[i] * G(i, j);
      two(1, j) += l2[i] * G(i, j);
    }
  }
  std::optional<Vec> u;
  for (auto& k : two.kernel()) {
    Vec cand{k[0], k[1], k[2], k[3]};
    if (!B(cand, *p0).is_zero()) { u = cand; break; }
  }
  if (!u) return std::nullopt;
  K bup = B(*u, *p0);
  K lambda = -beta / bup;
  K mu = -lambda * B(*u, *u) / (bup + bup);
  Vec v11 = comb(lambda, *u, mu, *p0);

  auto pr = parameter_ring(fld);
  auto X = [&pr](std::size_t i) { return Poly<PrimeField>::variable(pr, i); };
  Parametrization<PrimeField> par{Poly<PrimeField>(pr), Poly<PrimeField>(pr), Poly<PrimeField>(pr),
                                  Poly<PrimeField>(pr)};
  const Poly<PrimeField> m00 = X(0) * X(2), m01 = X(0) * X(3), m10 = X(1) * X(2), m11 = X(1) * X(3);
  for (std::size_t i = 0; i < 4; ++i)
    par[i] = m00.scaled((*p0)[i]) + m01.scaled(l1[i]) + m10.scaled(l2[i]) + m11.scaled(v11[i]);
  return par;
}

/// All F_p points of Q, projectively normalized.  With a parametrization the
/// (p+1)^2 parameter pairs are mapped; otherwise all of P^3(F_p) is scanned.
template <class Fn>
void for_each_quadric_point(const Quadric<PrimeField>& q, Fn&& fn) {
  const PrimeField& fld = q.ring()->field();
  const std::uint32_t p = fld.p;
  std::vector<std::array<ModP, 2>> line;
  for (std::uint32_t s = 0; s < p; ++s) line.push_back({fld.one(), fld.from_int(s)});
  line.push_back({fld.zero(), fld.one()});
  if (q.param) {
    for (const auto& x : line)
      for (const auto& y : line) {
        std::array<ModP, 4> pt = q.point_at({x[0], x[1], y[0], y[1]});
        if (!normalize_projective<ModP>(pt)) throw std::logic_error("parametrization vanishes at an F_p point");
        fn(pt);
      }
    return;
  }
  // Brute force: points with leading 1 in position k.
  for (std::size_t lead = 0; lead < 4; ++lead) {
    const std::size_t rest = 3 - lead;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < rest; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::array<ModP, 4> pt;
      for (std::size_t i = 0; i < lead; ++i) pt[i] = fld.zero();
      pt[lead] = fld.one();
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i < 4; ++i) {
        pt[i] = fld.from_int(static_cast<long>(c % p));
        c /= p;
      }
      if (q.contains(pt)) fn(pt);
    }
  }
}

/// Reduction of a rational quadric (and its parametrization) modulo p.
inline Quadric<PrimeField> reduce_mod(const Quadric<RationalField>& q, const RingPtr<PrimeField>& target) {
  Quadric<PrimeField> out{reduce_mod(q.form, target), std::nullopt};
  if (q.param) {
    auto pr = parameter_ring(target->field());
    Parametrization<PrimeField> par{Poly<PrimeField>(pr), Poly<PrimeField>(pr), Poly<PrimeField>(pr),
                                    Poly<PrimeField>(pr)};
    for (std::size_t i = 0; i < 4; ++i) par[i] = reduce_mod((*q.param)[i], pr);
    out.param = par;
  }
  return out;
}

}  // namespace pfafflab
