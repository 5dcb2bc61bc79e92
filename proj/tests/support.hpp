#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <map>
#include <string>
#include <vector>

#include "pfafflab/corpus.hpp"
#include "pfafflab/construct.hpp"

namespace pfafflab::testing {

inline RingPtr<QQ> abcd() {
  static const auto ring = standard_ring();
  return ring;
}

inline Poly<QQ> P(const std::string& s, const RingPtr<QQ>& ring = abcd()) { return parse_poly(ring, s); }

inline const std::vector<CorpusEntry>& corpus() {
  static const auto entries = load_corpus();
  return entries;
}

inline const CorpusEntry& entry(const std::string& id) {
  const auto* e = find_entry(corpus(), id);
  if (!e) throw std::out_of_range("no corpus entry " + id);
  return *e;
}

inline std::string data_path(const std::string& rel) { return std::string(PFAFFLAB_DATA_DIR) + "/" + rel; }

inline std::vector<Rational> Q4(long a, long b, long c, long d) { return {a, b, c, d}; }

/// Random polynomial with at most `terms` terms of total degree <= deg and
/// coefficients in [-5, 5].
template <class F>
Poly<F> random_poly(const RingPtr<F>& ring, Rng& rng, int deg, int terms) {
  std::vector<typename Poly<F>::Term> ts;
  for (int k = 0; k < terms; ++k) {
    Monomial m;
    int left = static_cast<int>(rng.uniform(0, deg));
    for (std::size_t v = 0; v < ring->nvars() && left > 0; ++v) {
      int e = v + 1 == ring->nvars() ? left : static_cast<int>(rng.uniform(0, left));
      m = m * Monomial::variable(v, static_cast<std::uint16_t>(e));
      left -= e;
    }
    ts.push_back({m, ring->field().from_int(rng.uniform(-5, 5))});
  }
  return Poly<F>::from_terms(ring, std::move(ts));
}

template <class F>
SkewMatrix<F> random_skew(const RingPtr<F>& ring, std::size_t n, Rng& rng, int deg, int terms) {
  SkewMatrix<F> A(ring, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) A.set(i, j, random_poly(ring, rng, deg, terms));
  return A;
}

inline Matrix<QQ> random_constant(std::size_t r, std::size_t c, Rng& rng, long lo = -3, long hi = 3) {
  Matrix<QQ> M(QQ{}, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = Rational(rng.uniform(lo, hi));
  return M;
}

inline Matrix<QQ> random_invertible(std::size_t n, Rng& rng) {
  for (;;) {
    auto M = random_constant(n, n, rng);
    if (!M.det().is_zero()) return M;
  }
}

/// Determinant of a polynomial matrix by Laplace expansion along the first
/// row, memoized over column subsets.  Shares nothing with the Pfaffian code.
template <class F>
Poly<F> laplace_det(const std::vector<std::vector<Poly<F>>>& M, const RingPtr<F>& ring) {
  const std::size_t n = M.size();
  std::map<std::uint32_t, Poly<F>> memo;
  std::function<Poly<F>(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t cols) -> Poly<F> {
    if (row == n) return Poly<F>::constant(ring, 1);
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Poly<F> acc(ring);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      if (!M[row][c].is_zero()) {
        auto minor = rec(row + 1, cols & ~(1u << c));
        acc = sign > 0 ? acc + M[row][c] * minor : acc - M[row][c] * minor;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return rec(0, (1u << n) - 1);
}

template <class F>
std::vector<std::vector<Poly<F>>> full_matrix(const SkewMatrix<F>& A) {
  std::vector<std::vector<Poly<F>>> M(A.size());
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) M[i].push_back(A(i, j));
  return M;
}

/// All points of P^n(F_p), normalized with first nonzero coordinate 1.
inline std::vector<std::vector<ModP>> projective_points(std::uint32_t p, std::size_t n) {
  std::vector<std::vector<ModP>> out;
  for (std::size_t lead = 0; lead <= n; ++lead) {
    std::size_t free = n - lead;
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < free; ++k) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<ModP> pt(n + 1, ModP(0, p));
      pt[lead] = ModP(1, p);
      std::uint64_t c = code;
      for (std::size_t k = lead + 1; k <= n; ++k, c /= p) pt[k] = ModP(static_cast<long>(c % p), p);
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace pfafflab::testing
