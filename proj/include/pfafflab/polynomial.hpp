#pragma once

// Sparse multivariate polynomials over an exact field.  Terms are kept sorted
// in decreasing order for the ring's monomial order, without zero
// coefficients.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pfafflab/field.hpp"

namespace pfafflab {

inline constexpr std::size_t kMaxVars = 16;

/// Total degree reported for the zero polynomial (stands in for -infinity).
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

struct Monomial {
  std::array<std::uint16_t, kMaxVars> exp{};
  std::uint32_t degree = 0;

  static Monomial variable(std::size_t i, std::uint16_t power = 1) {
    Monomial m;
    m.exp[i] = power;
    m.degree = power;
    return m;
  }

  std::uint16_t operator[](std::size_t i) const { return exp[i]; }

  bool divides(const Monomial& other) const {
    if (degree > other.degree) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (exp[i] > other.exp[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] + b.exp[i];
    m.degree = a.degree + b.degree;
    return m;
  }

  /// a / b, assuming b divides a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = a.exp[i] - b.exp[i];
    m.degree = a.degree - b.degree;
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      m.exp[i] = std::max(a.exp[i], b.exp[i]);
      m.degree += m.exp[i];
    }
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.exp[i] != 0 && b.exp[i] != 0) return false;
    return true;
  }

  /// Index of the only variable occurring, if the monomial is a pure power.
  std::optional<std::size_t> pure_power_variable() const {
    std::optional<std::size_t> var;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (exp[i] == 0) continue;
      if (var) return std::nullopt;
      var = i;
    }
    return var;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exp != b.exp; }
  /// Arbitrary strict weak order for use as a map key; not a term order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exp < b.exp; }
};

enum class OrderKind { GRevLex, Lex, Elimination };

/// A monomial order on the first `nvars` variables.  Elimination orders
/// compare the first `block` variables by grevlex and break ties with grevlex
/// on the remaining ones, so any polynomial whose leading monomial avoids the
/// block lies in the subring of the remaining variables.
struct MonomialOrder {
  OrderKind kind = OrderKind::GRevLex;
  std::size_t block = 0;

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
  static MonomialOrder elimination(std::size_t block) { return {OrderKind::Elimination, block}; }

  /// Returns >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b, std::size_t nvars) const {
    switch (kind) {
      case OrderKind::GRevLex:
        return grevlex_range(a, b, 0, nvars);
      case OrderKind::Lex:
        for (std::size_t i = 0; i < nvars; ++i)
          if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
        return 0;
      case OrderKind::Elimination: {
        int c = grevlex_range(a, b, 0, block);
        if (c != 0) return c;
        return grevlex_range(a, b, block, nvars);
      }
    }
    return 0;
  }

  friend bool operator==(const MonomialOrder& x, const MonomialOrder& y) {
    return x.kind == y.kind && x.block == y.block;
  }

  std::string name() const {
    switch (kind) {
      case OrderKind::GRevLex: return "grevlex";
      case OrderKind::Lex: return "lex";
      case OrderKind::Elimination: return "elim" + std::to_string(block);
    }
    return "?";
  }

 private:
  static int grevlex_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint32_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      da += a.exp[i];
      db += b.exp[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;)
      if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i] ? 1 : -1;
    return 0;
  }
};

template <class F>
class PolyRing {
 public:
  PolyRing(F field, std::vector<std::string> vars, MonomialOrder order = {})
      : field_(std::move(field)), vars_(std::move(vars)), order_(order) {
    if (vars_.size() > kMaxVars)
      throw std::invalid_argument("at most " + std::to_string(kMaxVars) + " variables supported");
    if (order_.kind == OrderKind::Elimination && order_.block > vars_.size())
      throw std::invalid_argument("elimination block larger than variable count");
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable '" + vars_[i] + "'");
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, vars_.size()); }

  bool same_as(const PolyRing& o) const {
    return field_ == o.field_ && vars_ == o.vars_ && order_ == o.order_;
  }

 private:
  F field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> vars, MonomialOrder order = {}) {
  return std::make_shared<const PolyRing<F>>(std::move(field), std::move(vars), order);
}

template <class F>
class Poly {
 public:
  using K = typename F::Element;
  struct Term {
    Monomial mono;
    K coeff;
  };

  Poly() = default;
  explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr<F> ring, K c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }
  static Poly constant(RingPtr<F> ring, long c) {
    K k = ring->field().from_int(c);
    return constant(std::move(ring), std::move(k));
  }
  static Poly variable(RingPtr<F> ring, std::size_t i) {
    if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
    Poly p(ring);
    p.terms_.push_back({Monomial::variable(i), ring->field().one()});
    return p;
  }
  static Poly term(RingPtr<F> ring, const Monomial& m, K c) {
    Poly p(std::move(ring));
    if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
    return p;
  }
  /// Builds a polynomial from unsorted terms, combining duplicates.
  static Poly from_terms(RingPtr<F> ring, std::vector<Term> terms) {
    Poly p(std::move(ring));
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree == 0); }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const K& leading_coefficient() const { return leading_term().coeff; }

  int degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree);
    return static_cast<int>(d);
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree != terms_.front().mono.degree) return false;
    return true;
  }

  /// Highest exponent of variable i.
  int degree_in(std::size_t i) const {
    int d = terms_.empty() ? kDegreeOfZero : 0;
    for (const auto& t : terms_) d = std::max<int>(d, t.mono.exp[i]);
    return d;
  }

  bool involves(std::size_t i) const {
    for (const auto& t : terms_)
      if (t.mono.exp[i] != 0) return true;
    return false;
  }

  K coefficient(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return ring_->field().zero();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    const RingPtr<F>& ring = common_ring(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(ring);
    std::map<Monomial, K> acc;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        auto [it, inserted] = acc.try_emplace(ta.mono * tb.mono, ta.coeff * tb.coeff);
        if (!inserted) it->second += ta.coeff * tb.coeff;
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) terms.push_back({m, std::move(c)});
    Poly r(ring);
    r.terms_ = std::move(terms);
    r.sort_terms();
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const K& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }

  /// c * m * this.  Multiplication by a monomial preserves term order.
  Poly times_term(const Monomial& m, const K& c) const {
    if (c.is_zero()) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result = constant(ring_, 1);
    Poly base = *this;
    while (e) {
      if (e & 1u) result *= base;
      e >>= 1u;
      if (e) base *= base;
    }
    return result;
  }

  /// Scales so the leading coefficient is 1.
  Poly monic() const {
    if (is_zero() || leading_coefficient().is_one()) return *this;
    return scaled(leading_coefficient().inverse());
  }

  K eval(std::span<const K> point) const {
    if (point.size() != ring_->nvars())
      throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                  " coordinates, ring has " + std::to_string(ring_->nvars()) + " variables");
    K total = ring_->field().zero();
    for (const auto& t : terms_) {
      K v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (std::uint16_t e = 0; e < t.mono.exp[i]; ++e) v *= point[i];
      total += v;
    }
    return total;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Removes the leading term in place.
  void drop_leading() { terms_.erase(terms_.begin()); }

  /// Re-sorts after a ring with a different order has been attached.
  Poly with_ring(RingPtr<F> ring) const {
    if (ring->nvars() != ring_->nvars()) throw std::invalid_argument("with_ring: variable count differs");
    Poly r(std::move(ring));
    r.terms_ = terms_;
    r.sort_terms();
    return r;
  }

 private:
  static const RingPtr<F>& common_ring(const Poly& a, const Poly& b) {
    if (!a.ring_) {
      if (!b.ring_) throw std::logic_error("polynomial without ring");
      return b.ring_;
    }
    if (b.ring_ && a.ring_ != b.ring_ && !a.ring_->same_as(*b.ring_))
      throw std::invalid_argument("polynomials belong to different rings");
    return a.ring_;
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    const RingPtr<F>& ring = common_ring(a, b);
    Poly r(ring);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = ring->compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract) t.coeff = -t.coeff;
        r.terms_.push_back(std::move(t));
      } else {
        K s = subtract ? a.terms_[i].coeff - b.terms_[j].coeff : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void sort_terms() {
    const auto& ring = *ring_;
    std::sort(terms_.begin(), terms_.end(),
              [&ring](const Term& x, const Term& y) { return ring.compare(x.mono, y.mono) > 0; });
  }

  void normalize() {
    for (const auto& t : terms_)
      for (std::size_t i = ring_->nvars(); i < kMaxVars; ++i)
        if (t.mono.exp[i] != 0) throw std::invalid_argument("exponent outside ring variables");
    sort_terms();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) out.back().coeff += t.coeff;
      else out.push_back(std::move(t));
      if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    }
    // A zero produced mid-run can leave equal monomials split around it; a
    // second pass settles that.
    terms_.clear();
    for (auto& t : out) {
      if (!terms_.empty() && terms_.back().mono == t.mono) {
        terms_.back().coeff += t.coeff;
        if (terms_.back().coeff.is_zero()) terms_.pop_back();
      } else {
        terms_.push_back(std::move(t));
      }
    }
  }

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

/// Replaces variable i of f by images[i]; all images share one ring.
template <class F>
Poly<F> substitute(const Poly<F>& f, const std::vector<Poly<F>>& images) {
  if (images.size() != f.ring()->nvars())
    throw std::invalid_argument("substitute: expected " + std::to_string(f.ring()->nvars()) + " images, got " +
                                std::to_string(images.size()));
  if (images.empty()) throw std::invalid_argument("substitute: no images");
  RingPtr<F> target = images.front().ring();
  for (const auto& im : images)
    if (im.ring() != target && !im.ring()->same_as(*target))
      throw std::invalid_argument("substitute: images live in different rings");

  std::vector<std::vector<Poly<F>>> powers(images.size());
  auto power = [&](std::size_t var, std::uint16_t e) -> const Poly<F>& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(Poly<F>::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[var]);
    return cache[e];
  };

  Poly<F> result(target);
  for (const auto& t : f.terms()) {
    Poly<F> term = Poly<F>::constant(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono.exp[i] != 0) term *= power(i, t.mono.exp[i]);
    result += term;
  }
  return result;
}

/// Exact division: returns q with f = g*q, or nothing if g does not divide f.
template <class F>
std::optional<Poly<F>> divide_exact(const Poly<F>& f, const Poly<F>& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  Poly<F> p = f;
  Poly<F> q(f.ring() ? f.ring() : g.ring());
  const auto& lt = g.leading_term();
  auto inv = lt.coeff.inverse();
  while (!p.is_zero()) {
    const auto& pt = p.leading_term();
    if (!lt.mono.divides(pt.mono)) return std::nullopt;
    Monomial m = pt.mono / lt.mono;
    auto c = pt.coeff * inv;
    q += Poly<F>::term(q.ring(), m, c);
    p -= g.times_term(m, c);
  }
  return q;
}

/// Moves f into a ring with the same field; var_map[i] is the target index of
/// source variable i.
template <class F>
Poly<F> reembed(const Poly<F>& f, const RingPtr<F>& target, std::span<const std::size_t> var_map) {
  std::vector<typename Poly<F>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (var_map[i] >= target->nvars()) throw std::invalid_argument("reembed: variable has no image");
      m.exp[var_map[i]] = t.mono.exp[i];
    }
    m.degree = t.mono.degree;
    terms.push_back({m, t.coeff});
  }
  return Poly<F>::from_terms(target, std::move(terms));
}

/// Maps coefficients into another field (e.g. reduction mod p).
template <class G, class F, class Fn>
Poly<G> map_coefficients(const Poly<F>& f, const RingPtr<G>& target, Fn&& fn) {
  std::vector<typename Poly<G>::Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.mono, fn(t.coeff)});
  return Poly<G>::from_terms(target, std::move(terms));
}

/// Reduction of a rational polynomial into a prime-field ring with the same
/// variables.
inline Poly<PrimeField> reduce_mod(const Poly<RationalField>& f, const RingPtr<PrimeField>& target) {
  const PrimeField& fp = target->field();
  return map_coefficients<PrimeField>(f, target, [&fp](const Rational& c) { return fp.from_rational(c); });
}

/// Same variables and order, different field.
template <class G, class F>
RingPtr<G> ring_over(const RingPtr<F>& ring, G field) {
  return make_ring<G>(std::move(field), ring->vars(), ring->order());
}

}  // namespace pfafflab
