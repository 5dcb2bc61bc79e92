#include <gtest/gtest.h>

#include "support.hpp"

using namespace pfafflab;
using namespace pfafflab::testing;

namespace {

std::vector<Rational> pt(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Field, RationalArithmeticIsExact) {
  Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational::parse("-6/4"), Rational(-3, 2));
  EXPECT_EQ(Rational::parse("-6/4").str(), "-3/2");
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational(0).inverse(), std::domain_error);
}

TEST(Field, PrimeFieldValidation) {
  EXPECT_NO_THROW(PrimeField(10007));
  EXPECT_THROW(PrimeField(10005), std::invalid_argument);
  EXPECT_THROW(PrimeField(2147483659u), std::invalid_argument);
  EXPECT_EQ(FieldSpec::prime(101).characteristic, 101u);
  EXPECT_EQ(FieldSpec::rationals().characteristic, 0u);
}

TEST(Field, ModPInverse) {
  PrimeField f(101);
  for (long v = 1; v < 101; ++v) EXPECT_TRUE((f.from_int(v) * f.from_int(v).inverse()).is_one());
  EXPECT_EQ(f.from_rational(Rational(1, 2)).value(), 51u);
  EXPECT_THROW(f.from_rational(Rational(1, 101)), std::domain_error);
}

TEST(PolyEval, Examples) {
  EXPECT_EQ(P("a*d - b*c").eval(pt({1, 0, 0, 1})), Rational(1));
  EXPECT_EQ(P("a*d - b*c").eval(pt({1, 1, 1, 1})), Rational(0));
  EXPECT_EQ(P("d*(a*d - b*c)").eval(pt({2, 1, 1, 3})), Rational(15));
}

TEST(PolyEval, LengthMismatchThrows) {
  auto v = pt({1, 2, 3});
  EXPECT_THROW(P("a").eval(v), std::invalid_argument);
}

TEST(PolySubstitute, Examples) {
  auto xy = make_ring(QQ{}, {"x0", "x1", "y0", "y1"});
  std::vector<Poly<QQ>> segre{P("x0*y0", xy), P("x0*y1", xy), P("x1*y0", xy), P("x1*y1", xy)};
  EXPECT_TRUE(substitute(P("a*d - b*c"), segre).is_zero());
  EXPECT_EQ(substitute(P("a"), segre), P("x0*y0", xy));
  auto st = make_ring(QQ{}, {"s", "t"});
  EXPECT_EQ(substitute(P("a + d"), {P("s", st), P("t", st), P("s", st), P("t", st)}), P("s + t", st));
  EXPECT_THROW(substitute(P("a"), {P("s", st)}), std::invalid_argument);
}

TEST(PolyDivides, Examples) {
  EXPECT_EQ(divide_exact(P("d*(a*d - b*c)"), P("a*d - b*c")), P("d"));
  EXPECT_FALSE(divide_exact(P("a^3"), P("a*d - b*c")).has_value());
  auto q = divide_exact(Poly<QQ>(abcd()), P("a"));
  ASSERT_TRUE(q.has_value());
  EXPECT_TRUE(q->is_zero());
  EXPECT_THROW(divide_exact(P("a"), Poly<QQ>(abcd())), std::domain_error);
}

TEST(PolyProperties, RingAxiomsOnRandomInputs) {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    auto f = random_poly(abcd(), rng, 3, 5), g = random_poly(abcd(), rng, 3, 5), h = random_poly(abcd(), rng, 3, 5);
    EXPECT_EQ((f + g) * h, f * h + g * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ((f + g) + h, f + (g + h));
    if (!f.is_zero() && !g.is_zero()) EXPECT_EQ((f * g).degree(), f.degree() + g.degree());
  }
}

TEST(PolyProperties, ExactDivisionRecoversQuotient) {
  Rng rng(12);
  for (int k = 0; k < 200; ++k) {
    auto g = random_poly(abcd(), rng, 2, 4), q = random_poly(abcd(), rng, 2, 4);
    if (g.is_zero()) continue;
    auto r = divide_exact(g * q, g);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r, q);
  }
}

TEST(PolyProperties, ReductionModPCommutesWithProduct) {
  Rng rng(13);
  auto gf = ring_over(abcd(), PrimeField(10007));
  for (int k = 0; k < 100; ++k) {
    auto f = random_poly(abcd(), rng, 3, 5).scaled(Rational(1, 3));
    auto g = random_poly(abcd(), rng, 3, 5).scaled(Rational(2, 7));
    EXPECT_EQ(reduce_mod(f * g, gf), reduce_mod(f, gf) * reduce_mod(g, gf));
    EXPECT_EQ(reduce_mod(f + g, gf), reduce_mod(f, gf) + reduce_mod(g, gf));
  }
}

TEST(PolyProperties, ZeroPolynomialConventions) {
  Poly<QQ> z(abcd());
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), kDegreeOfZero);
  EXPECT_TRUE(z.terms().empty());
  EXPECT_TRUE((P("a - a")).is_zero());
}

TEST(PolyIO, JsonRoundTrip) {
  auto f = P("3/2*a^2*b - c*d + 7");
  auto j = poly_to_json(f);
  EXPECT_EQ(j["a^2*b"], "3/2");
  EXPECT_EQ(j["c*d"], "-1");
  EXPECT_EQ(poly_from_json(abcd(), j), f);
  EXPECT_EQ(parse_poly(abcd(), to_string(f)), f);
}

TEST(PolyIO, MalformedInputIsRejected) {
  EXPECT_THROW(parse_poly(abcd(), "a +* b"), ParseError);
  EXPECT_THROW(parse_poly(abcd(), "e"), ParseError);
  EXPECT_THROW(poly_from_json(abcd(), Json::parse(R"({"a": "x"})")), ParseError);
}
