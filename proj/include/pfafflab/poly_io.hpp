#pragma once

// Text and JSON forms of polynomials.
//
// Expressions accept + - * ^, parentheses, integer or n/d rational constants
// and variable names ([A-Za-z_][A-Za-z0-9_]*).  The JSON form is an object
// mapping monomial strings ("a^2*b", "1" for the constant term) to
// coefficient strings.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pfafflab/polynomial.hpp"

namespace pfafflab {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class F>
class ExprParser {
 public:
  ExprParser(RingPtr<F> ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Poly<F> parse() {
    Poly<F> p = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  Poly<F> sum() {
    skip_ws();
    Poly<F> acc(ring_);
    bool negate = false;
    if (peek('+')) ++pos_;
    else if (peek('-')) { ++pos_; negate = true; }
    acc = product();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      if (peek('+')) { ++pos_; acc += product(); }
      else if (peek('-')) { ++pos_; acc -= product(); }
      else return acc;
    }
  }

  Poly<F> product() {
    Poly<F> acc = power();
    for (;;) {
      skip_ws();
      if (peek('*')) { ++pos_; acc *= power(); }
      else if (peek('(') || (pos_ < s_.size() && is_ident_start(s_[pos_]))) acc *= power();  // juxtaposition
      else return acc;
    }
  }

  Poly<F> power() {
    Poly<F> base = atom();
    skip_ws();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Poly<F> atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Poly<F> inner = sum();
      skip_ws();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (ch == '-') {  // unary minus inside products, e.g. "a*-b"
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (peek('/')) {
        ++pos_;
        std::size_t dstart = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (dstart == pos_) fail("expected denominator");
      }
      Rational r = Rational::parse(s_.substr(start, pos_ - start));
      return Poly<F>::constant(ring_, ring_->field().from_rational(r));
    }
    if (is_ident_start(ch)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) fail("unknown variable '" + name + "'");
      return Poly<F>::variable(ring_, *idx);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  static bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + what);
  }

  RingPtr<F> ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

template <class F>
Poly<F> parse_poly(const RingPtr<F>& ring, std::string_view text) {
  return detail::ExprParser<F>(ring, text).parse();
}

template <class F>
std::string monomial_string(const PolyRing<F>& ring, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (m.exp[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.vars()[i];
    if (m.exp[i] > 1) out += '^' + std::to_string(m.exp[i]);
  }
  return out.empty() ? "1" : out;
}

inline std::string coeff_string(const Rational& c) { return c.str(); }

/// Signed representative in (-p/2, p/2] for readability.
inline std::string coeff_string(const ModP& c) {
  std::int64_t v = c.value();
  if (c.modulus() != 0 && v > static_cast<std::int64_t>(c.modulus() / 2)) v -= c.modulus();
  return std::to_string(v);
}

template <class F>
std::string to_string(const Poly<F>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string c = coeff_string(t.coeff);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    std::string mono = monomial_string(*f.ring(), t.mono);
    if (mono == "1") out += c;
    else if (c == "1") out += mono;
    else out += c + "*" + mono;
  }
  return out;
}

template <class F>
std::ostream& operator<<(std::ostream& os, const Poly<F>& f) {
  return os << to_string(f);
}

template <class F>
nlohmann::ordered_json poly_to_json(const Poly<F>& f) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& t : f.terms()) j[monomial_string(*f.ring(), t.mono)] = coeff_string(t.coeff);
  return j;
}

/// Accepts either a JSON object {"monomial": "coeff"} or a string expression.
template <class F, class Json>
Poly<F> poly_from_json(const RingPtr<F>& ring, const Json& j) {
  if (j.is_string()) return parse_poly(ring, j.template get<std::string>());
  if (!j.is_object()) throw ParseError("polynomial must be a JSON object or expression string");
  Poly<F> result(ring);
  for (auto it = j.begin(); it != j.end(); ++it) {
    Poly<F> mono = it.key() == "1" ? Poly<F>::constant(ring, 1) : parse_poly(ring, it.key());
    if (mono.size() != 1 || !mono.leading_coefficient().is_one())
      throw ParseError("'" + it.key() + "' is not a monomial");
    Rational c;
    if (it.value().is_string()) {
      try {
        c = Rational::parse(it.value().template get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw ParseError("coefficient of '" + it.key() + "': " + e.what());
      }
    } else if (it.value().is_number_integer()) c = Rational(it.value().template get<long>());
    else throw ParseError("coefficient of '" + it.key() + "' must be a string or integer");
    result += mono.scaled(ring->field().from_rational(c));
  }
  return result;
}

}  // namespace pfafflab
