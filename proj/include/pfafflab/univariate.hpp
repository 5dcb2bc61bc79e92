#pragma once

// Dense univariate polynomials, coefficient index = degree.  Used for the
// elimination polynomial of zero-dimensional systems: rational roots over Q
// and square-free parts over any field.

#include <vector>

#include "pfafflab/field.hpp"

namespace pfafflab::uni {

template <class K>
using Coeffs = std::vector<K>;

template <class K>
void trim(Coeffs<K>& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

template <class K>
int degree(const Coeffs<K>& f) {
  return static_cast<int>(f.size()) - 1;
}

/// Remainder of f modulo g (g nonzero).
template <class K>
Coeffs<K> rem(Coeffs<K> f, const Coeffs<K>& g) {
  trim(f);
  const K inv = g.back().inverse();
  while (f.size() >= g.size()) {
    K c = f.back() * inv;
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
    trim(f);
  }
  return f;
}

template <class K>
Coeffs<K> quo(Coeffs<K> f, const Coeffs<K>& g) {
  trim(f);
  if (f.size() < g.size()) return {};
  Coeffs<K> q(f.size() - g.size() + 1, f.front() - f.front());
  const K inv = g.back().inverse();
  while (f.size() >= g.size()) {
    K c = f.back() * inv;
    std::size_t shift = f.size() - g.size();
    q[shift] = c;
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= c * g[i];
    trim(f);
  }
  return q;
}

template <class K>
Coeffs<K> gcd(Coeffs<K> a, Coeffs<K> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs<K> r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    K inv = a.back().inverse();
    for (auto& c : a) c *= inv;
  }
  return a;
}

template <class K>
Coeffs<K> derivative(const Coeffs<K>& f, const K& one) {
  Coeffs<K> d;
  K k = one;
  for (std::size_t i = 1; i < f.size(); ++i, k += one) d.push_back(f[i] * k);
  trim(d);
  return d;
}

/// Degree of the square-free part, i.e. the number of distinct roots over
/// the algebraic closure.  Valid when the characteristic exceeds deg f.
template <class K>
int distinct_root_count(const Coeffs<K>& f, const K& one) {
  Coeffs<K> g = gcd(f, derivative(f, one));
  return degree(f) - degree(g);
}

/// Rational roots of a polynomial over Q, each listed once.
inline std::vector<Rational> rational_roots(Coeffs<Rational> f) {
  trim(f);
  std::vector<Rational> roots;
  if (f.size() <= 1) return roots;
  // Strip the zero root.
  std::size_t low = 0;
  while (f[low].is_zero()) ++low;
  if (low > 0) {
    roots.push_back(Rational(0));
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (f.size() <= 1) return roots;
  // Integer coefficients.
  mpz_class lcm_den = 1;
  for (const auto& c : f) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : f) z.push_back(mpz_class(c.value() * lcm_den));

  auto divisors = [](mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> ds;
    if (n > mpz_class("1000000000000"))
      throw std::runtime_error("rational_roots: coefficient too large for divisor enumeration");
    for (mpz_class d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    return ds;
  };

  auto ps = divisors(z.front());
  auto qs = divisors(z.back());
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int s : {1, -1}) {
        mpq_class cand(s * p, q);
        cand.canonicalize();
        Rational r(cand);
        bool dup = false;
        for (const auto& x : roots) dup = dup || x == r;
        if (dup) continue;
        Rational v(0);
        for (std::size_t i = f.size(); i-- > 0;) v = v * r + f[i];
        if (v.is_zero()) roots.push_back(r);
      }
  return roots;
}

}  // namespace pfafflab::uni
