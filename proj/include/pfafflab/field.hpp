#pragma once

// Exact coefficient fields: arbitrary-precision rationals (GMP) and prime
// fields F_p with p < 2^31.  Field *contexts* (RationalField, PrimeField)
// carry whatever is needed to build constants; elements are plain values.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pfafflab {

class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }

  /// Parses "n" or "n/d" with optional sign.
  static Rational parse(std::string_view s) {
    std::string str(s);
    mpq_class q;
    if (str.empty() || q.set_str(str, 10) != 0)
      throw std::invalid_argument("malformed rational '" + str + "'");
    if (sgn(q.get_den()) == 0)
      throw std::invalid_argument("zero denominator in '" + str + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_{0};
};

/// Element of F_p.  A default-constructed element is a modulus-free zero that
/// adopts the modulus of whatever it is combined with.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t v, std::uint32_t p) : p_(p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in F_p");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p_, new_r = v_;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return ModP(t, p_);
  }

  ModP operator-() const {
    ModP r = *this;
    if (v_ != 0) r.v_ = p_ - v_;
    return r;
  }
  ModP& operator+=(const ModP& o) {
    adopt(o);
    std::uint64_t s = std::uint64_t{v_} + o.v_;
    if (s >= p_) s -= p_;
    v_ = static_cast<std::uint32_t>(s);
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    adopt(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : static_cast<std::uint32_t>(std::uint64_t{v_} + p_ - o.v_);
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    adopt(o);
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % (p_ ? p_ : 1));
    return *this;
  }
  ModP& operator/=(const ModP& o) {
    adopt(o);
    return *this *= o.inverse();
  }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend bool operator==(const ModP& a, const ModP& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ModP& a, const ModP& b) { return a.v_ != b.v_; }

  std::string str() const { return std::to_string(v_); }

 private:
  void adopt(const ModP& o) {
    if (p_ == 0) p_ = o.p_;
    else if (o.p_ != 0 && o.p_ != p_) throw std::logic_error("mixing elements of different prime fields");
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Smallest prime >= n.
inline std::uint32_t next_prime(std::uint32_t n) {
  while (!is_prime(n)) ++n;
  return n;
}

struct RationalField {
  using Element = Rational;
  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element from_int(long v) const { return Rational(v); }
  Element from_rational(const Rational& r) const { return r; }
  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

struct PrimeField {
  using Element = ModP;

  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime >= (1u << 31) || !is_prime(prime))
      throw std::invalid_argument("characteristic must be a prime below 2^31, got " + std::to_string(prime));
  }

  Element zero() const { return ModP(0, p); }
  Element one() const { return ModP(1, p); }
  Element from_int(long v) const { return ModP(v, p); }

  /// Reduction mod p; throws if p divides the denominator.
  Element from_rational(const Rational& r) const {
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num = r.numerator() % pz;
    mpz_class den = r.denominator() % pz;
    if (den == 0)
      throw std::domain_error("denominator of " + r.str() + " divisible by " + std::to_string(p));
    return ModP(num.get_si(), p) / ModP(den.get_si(), p);
  }

  std::uint32_t characteristic() const { return p; }
  std::string name() const { return "GF(" + std::to_string(p) + ")"; }
  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p == b.p; }

  std::uint32_t p;
};

/// The user-facing description of a coefficient field.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) {
    PrimeField check(p);
    return {Kind::PrimeField, check.p};
  }
};

}  // namespace pfafflab
