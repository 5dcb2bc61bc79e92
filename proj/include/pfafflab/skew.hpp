#pragma once

// Skew-symmetric matrices with polynomial entries and their Pfaffians.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pfafflab/linalg.hpp"
#include "pfafflab/polynomial.hpp"

namespace pfafflab {

/// Pfaffian of the principal submatrix on the index set `mask`, by first-row
/// expansion memoized over subsets:
///   Pf(S) = sum_{k>=1} (-1)^(k+1) a(s_0, s_k) Pf(S \ {s_0, s_k}).
/// `entry(i, j)` is queried for i < j only.
template <class T, class Entry>
T pfaffian_on(std::uint32_t mask, const Entry& entry, const T& zero, const T& one) {
  std::unordered_map<std::uint32_t, T> memo;
  auto rec = [&](auto&& self, std::uint32_t s) -> T {
    if (s == 0) return one;
    if (std::popcount(s) % 2 != 0) return zero;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    int first = std::countr_zero(s);
    std::uint32_t rest = s & (s - 1);
    T acc = zero;
    int k = 0;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      ++k;
      int j = std::countr_zero(r);
      T a = entry(first, j);
      if (a.is_zero()) continue;
      T sub = self(self, rest & ~(1u << j));
      if (sub.is_zero()) continue;
      if (k % 2 == 1) acc += a * sub;
      else acc -= a * sub;
    }
    memo.emplace(s, acc);
    return acc;
  };
  return rec(rec, mask);
}

template <class F>
class SkewMatrix {
 public:
  using P = Poly<F>;

  SkewMatrix() = default;
  SkewMatrix(RingPtr<F> ring, std::size_t n) : ring_(std::move(ring)), n_(n), upper_(n * n, P(ring_)) {
    if (n > 31) throw std::invalid_argument("skew matrix size above 31 not supported");
  }

  const RingPtr<F>& ring() const { return ring_; }
  std::size_t size() const { return n_; }

  /// Logical entry (i, j), with (j, i) = -(i, j) and zero diagonal.
  P operator()(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i == j) return P(ring_);
    return i < j ? upper_[i * n_ + j] : -upper_[j * n_ + i];
  }
  const P& upper(std::size_t i, std::size_t j) const {
    check(i, j);
    if (i >= j) throw std::out_of_range("upper(i, j) requires i < j");
    return upper_[i * n_ + j];
  }
  /// Sets entry (i, j) and implicitly (j, i) = -value.
  void set(std::size_t i, std::size_t j, P value) {
    check(i, j);
    if (i == j) {
      if (!value.is_zero()) throw std::invalid_argument("diagonal of a skew matrix must be zero");
      return;
    }
    if (i < j) upper_[i * n_ + j] = std::move(value);
    else upper_[j * n_ + i] = -value;
  }

  bool is_linear() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        const P& e = upper_[i * n_ + j];
        if (!e.is_zero() && (e.degree() != 1 || !e.is_homogeneous())) return false;
      }
    return true;
  }

  bool is_zero() const {
    for (const auto& e : upper_)
      if (!e.is_zero()) return false;
    return true;
  }

  friend bool operator==(const SkewMatrix& a, const SkewMatrix& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t k = 0; k < a.upper_.size(); ++k)
      if (a.upper_[k] != b.upper_[k]) return false;
    return true;
  }

  Matrix<F> evaluate(std::span<const typename F::Element> point) const {
    Matrix<F> m(ring_->field(), n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) {
        auto v = upper_[i * n_ + j].eval(point);
        m(j, i) = -v;
        m(i, j) = std::move(v);
      }
    return m;
  }

  std::size_t rank_at(std::span<const typename F::Element> point) const { return evaluate(point).rank(); }

  /// Applies `fn` to every entry (e.g. substitution into another ring).
  template <class G, class Fn>
  SkewMatrix<G> map_entries(const RingPtr<G>& target, Fn&& fn) const {
    SkewMatrix<G> out(target, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) out.set(i, j, fn(upper_[i * n_ + j]));
    return out;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::out_of_range("skew matrix index out of range");
  }

  RingPtr<F> ring_;
  std::size_t n_ = 0;
  std::vector<P> upper_;
};

/// Pfaffian of the principal submatrix on `mask` (bit i = row/column i).
template <class F>
Poly<F> sub_pfaffian(const SkewMatrix<F>& A, std::uint32_t mask) {
  auto entry = [&A](int i, int j) { return A.upper(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
  return pfaffian_on<Poly<F>>(mask, entry, Poly<F>(A.ring()), Poly<F>::constant(A.ring(), 1));
}

template <class F>
Poly<F> pfaffian(const SkewMatrix<F>& A) {
  if (A.size() % 2 != 0) throw std::invalid_argument("Pfaffian of odd-size matrix");
  return sub_pfaffian(A, A.size() == 0 ? 0u : (1u << A.size()) - 1u);
}

/// Pfaffian of a constant skew matrix (only the upper triangle is read).
template <class F>
typename F::Element pfaffian(const Matrix<F>& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0) throw std::invalid_argument("Pfaffian needs an even square matrix");
  auto entry = [&M](int i, int j) { return M(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
  std::uint32_t mask = M.rows() == 0 ? 0u : (1u << M.rows()) - 1u;
  return pfaffian_on<typename F::Element>(mask, entry, M.field().zero(), M.field().one());
}

/// The adjoint P with P(r, c) = (-1)^(r+c) Pf(A without rows/columns r, c)
/// for 0-based r < c, skew-symmetric, so that A·P = Pf(A)·I.
template <class F>
std::vector<std::vector<Poly<F>>> pfaffian_adjoint(const SkewMatrix<F>& A) {
  const std::size_t n = A.size();
  if (n != 6) throw std::invalid_argument("pfaffian_adjoint requires a 6x6 matrix");
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<std::vector<Poly<F>>> P(n, std::vector<Poly<F>>(n, Poly<F>(A.ring())));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      Poly<F> s = sub_pfaffian(A, full & ~(1u << r) & ~(1u << c));
      if ((r + c) % 2 == 1) s = -s;
      P[c][r] = -s;
      P[r][c] = std::move(s);
    }
  return P;
}

/// The 15 Plücker coordinates: adjoint entries P(r, c), r < c, in
/// lexicographic order of (r, c).
template <class F>
std::vector<Poly<F>> plucker_forms(const SkewMatrix<F>& A) {
  auto P = pfaffian_adjoint(A);
  std::vector<Poly<F>> out;
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = r + 1; c < 6; ++c) out.push_back(P[r][c]);
  return out;
}

/// All Pfaffians of principal k×k submatrices.
template <class F>
std::vector<Poly<F>> principal_sub_pfaffians(const SkewMatrix<F>& A, std::size_t k) {
  std::vector<Poly<F>> out;
  for (std::uint32_t mask = 0; mask < (1u << A.size()); ++mask)
    if (static_cast<std::size_t>(std::popcount(mask)) == k) out.push_back(sub_pfaffian(A, mask));
  return out;
}

/// M·A·Mᵀ for a constant k×m matrix M of full row rank.
template <class F>
SkewMatrix<F> compress(const SkewMatrix<F>& A, const Matrix<F>& M) {
  if (M.cols() != A.size())
    throw std::invalid_argument("compress: M has " + std::to_string(M.cols()) + " columns, A has size " +
                                std::to_string(A.size()));
  if (M.rank() != M.rows()) throw std::invalid_argument("compress: M is not of full row rank");
  const std::size_t k = M.rows(), m = M.cols();
  SkewMatrix<F> out(A.ring(), k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Poly<F> acc(A.ring());
      for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
          auto c = M(i, p) * M(j, q) - M(i, q) * M(j, p);
          if (c.is_zero()) continue;
          const Poly<F>& e = A.upper(p, q);
          if (!e.is_zero()) acc += e.scaled(c);
        }
      out.set(i, j, std::move(acc));
    }
  return out;
}

template <class F>
SkewMatrix<F> direct_sum(const SkewMatrix<F>& A, const SkewMatrix<F>& B) {
  RingPtr<F> ring = A.ring() ? A.ring() : B.ring();
  if (A.ring() && B.ring() && A.ring() != B.ring() && !A.ring()->same_as(*B.ring()))
    throw std::invalid_argument("direct_sum: matrices over different rings");
  const std::size_t a = A.size(), b = B.size();
  SkewMatrix<F> out(ring, a + b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = i + 1; j < a; ++j) out.set(i, j, A.upper(i, j));
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = i + 1; j < b; ++j) out.set(a + i, a + j, B.upper(i, j));
  return out;
}

/// Reduction of a rational matrix modulo p into a ring with the same names.
inline SkewMatrix<PrimeField> reduce_mod(const SkewMatrix<RationalField>& A, const RingPtr<PrimeField>& target) {
  return A.map_entries(target, [&target](const Poly<RationalField>& e) { return reduce_mod(e, target); });
}

}  // namespace pfafflab
