#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace pfafflab;
using namespace pfafflab::testing;

namespace {

std::vector<Poly<QQ>> polys(const RingPtr<QQ>& r, std::initializer_list<const char*> s) {
  std::vector<Poly<QQ>> out;
  for (const char* x : s) out.push_back(parse_poly(r, x));
  return out;
}

RingPtr<QQ> ring(std::vector<std::string> vars, MonomialOrder o = MonomialOrder::grevlex()) {
  return make_ring(QQ{}, std::move(vars), o);
}

std::vector<Poly<QQ>> sorted(std::vector<Poly<QQ>> v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return to_string(a) < to_string(b); });
  return v;
}

}  // namespace

TEST(GroebnerBasis, HandComputedLexBasis) {
  auto r = ring({"x", "y"}, MonomialOrder::lex());
  auto gb = groebner_basis(polys(r, {"x - y^2", "y - x"}));
  EXPECT_EQ(sorted(gb), sorted(polys(r, {"x - y", "y^2 - y"})));
}

TEST(GroebnerBasis, AlreadyReducedInputsAreFixed) {
  auto r = ring({"x", "y"});
  EXPECT_EQ(groebner_basis(polys(r, {"x"})), polys(r, {"x"}));
  auto in = polys(r, {"x^2", "x*y", "y^2"});
  EXPECT_EQ(sorted(groebner_basis(in)), sorted(in));
}

TEST(GroebnerBasis, IndependentOfGeneratorOrder) {
  Rng rng(21);
  auto r = ring({"a", "b", "c", "d"});
  for (int k = 0; k < 20; ++k) {
    std::vector<Poly<QQ>> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(random_poly(r, rng, 2, 3));
    auto gb = sorted(groebner_basis(gens));
    std::reverse(gens.begin(), gens.end());
    EXPECT_EQ(sorted(groebner_basis(gens)), gb);
    std::rotate(gens.begin(), gens.begin() + 1, gens.end());
    EXPECT_EQ(sorted(groebner_basis(gens)), gb);
  }
}

TEST(GroebnerBasis, BudgetIsAHardError) {
  const auto& e = entry("c2=5");
  GroebnerOptions opt;
  opt.max_pairs = 1;
  EXPECT_THROW(groebner_basis(rank_two_locus_ideal(e.matrix, e.quadric.form), opt), BudgetExceeded);
}

TEST(NormalForm, IsAProjection) {
  Rng rng(22);
  auto r = ring({"a", "b", "c", "d"});
  auto gb = groebner_basis(polys(r, {"a*d - b*c", "a^2 - b*d", "c^2 - a*b"}));
  for (int k = 0; k < 50; ++k) {
    auto f = random_poly(r, rng, 4, 6), g = random_poly(r, rng, 4, 6);
    auto nf = normal_form(f, gb);
    EXPECT_EQ(normal_form(nf, gb), nf);
    EXPECT_EQ(normal_form(f + g, gb), normal_form(nf + normal_form(g, gb), gb));
  }
}

TEST(IdealMembership, Examples) {
  auto r = ring({"x", "y"});
  EXPECT_TRUE(ideal_membership(parse_poly(r, "x"), polys(r, {"x"})));
  EXPECT_TRUE(ideal_membership(parse_poly(r, "1"), polys(r, {"x", "x + 1"})));
  EXPECT_FALSE(ideal_membership(parse_poly(r, "y"), polys(r, {"x"})));
}

TEST(ProjectiveEmptiness, Examples) {
  EXPECT_TRUE(is_projectively_empty(polys(abcd(), {"a", "b", "c", "d"})).empty);
  EXPECT_FALSE(is_projectively_empty(polys(abcd(), {"a*d - b*c"})).empty);
  EXPECT_THROW(is_projectively_empty(polys(abcd(), {"a + 1"})), std::invalid_argument);
}

TEST(ProjectiveEmptiness, WitnessExponentsAreMemberships) {
  const auto& e = entry("O+O(2)");
  auto gens = rank_two_locus_ideal(e.matrix, e.quadric.form);
  auto res = is_projectively_empty(gens);
  ASSERT_TRUE(res.empty);
  ASSERT_EQ(res.witness_exponents.size(), 4u);
  for (std::size_t v = 0; v < 4; ++v) {
    auto pw = Poly<QQ>::variable(abcd(), v).pow(static_cast<unsigned>(res.witness_exponents[v]));
    EXPECT_TRUE(ideal_membership(pw, gens));
  }
}

// The rank-2 locus of (O+O(2)) on ad-bc, decided symbolically and by
// scanning every point of P^3(F_101).
TEST(ProjectiveEmptiness, AgreesWithExhaustiveScanOverF101) {
  const auto& e = entry("O+O(2)");
  auto gens = rank_two_locus_ideal(e.matrix, e.quadric.form);
  EXPECT_TRUE(is_projectively_empty(gens).empty);
  auto gf = ring_over(abcd(), PrimeField(101));
  std::vector<Poly<GF>> red;
  for (const auto& g : gens) red.push_back(reduce_mod(g, gf));
  std::size_t zeros = 0;
  for (const auto& pt : projective_points(101, 3))
    if (std::all_of(red.begin(), red.end(), [&](const auto& g) { return g.eval(pt).is_zero(); })) ++zeros;
  EXPECT_EQ(zeros, 0u);
}

TEST(ZeroDimDegree, Examples) {
  auto r = ring({"x", "y", "z"});
  EXPECT_EQ(zero_dim_degree(polys(r, {"x^2 + 2*y^2 - 3*z^2", "x*y - 5*y*z + z^2"})), 4);
  EXPECT_EQ(zero_dim_degree(polys(r, {"x - z", "y - 2*z"})), 1);
  EXPECT_EQ(zero_dim_degree(polys(r, {"x", "y", "z"})), 0);
  EXPECT_THROW(zero_dim_degree(polys(r, {"x*y"})), PositiveDimensional);
}

TEST(ZeroDimDegree, CountsMultiplicity) {
  auto r = ring({"x", "y", "z"});
  // A conic and a tangent line doubled: two points, one of multiplicity 3.
  EXPECT_EQ(zero_dim_degree(polys(r, {"x*z - y^2", "y*(x - y)"})), 4);
  EXPECT_EQ(zero_dim_degree(polys(r, {"x*z - y^2", "y^2"})), 4);
}

// Two conics meeting in four rational points: the degree equals the number of
// F_p points found by scanning P^2(F_101).
TEST(ZeroDimDegree, AgreesWithEnumerationOnTwoConics) {
  auto r = ring({"x", "y", "z"});
  auto gens = polys(r, {"x^2 - y^2", "y^2 - z^2"});
  EXPECT_EQ(zero_dim_degree(gens), 4);
  auto gf = ring_over(r, PrimeField(101));
  std::size_t n = 0;
  for (const auto& pt : projective_points(101, 2))
    if (reduce_mod(gens[0], gf).eval(pt).is_zero() && reduce_mod(gens[1], gf).eval(pt).is_zero()) ++n;
  EXPECT_EQ(n, 4u);
}

TEST(ZeroDimDegree, GenericSectionOfC2Three) {
  const auto& e = entry("c2=3");
  auto adj = pfaffian_adjoint(e.matrix);
  std::vector<Rational> v{3, -1, 4, 1, -5, 9};
  std::vector<Poly<QQ>> gens{e.quadric.form};
  for (std::size_t j = 0; j < 6; ++j) {
    Poly<QQ> s(abcd());
    for (std::size_t i = 0; i < 6; ++i) s += adj[i][j].scaled(v[i]);
    gens.push_back(s);
  }
  auto sat = saturate(gens, irrelevant_ideal(abcd()));
  EXPECT_EQ(zero_dim_degree(sat), 3);
}

TEST(Saturate, Examples) {
  auto r = ring({"x", "y"});
  auto sat = saturate(polys(r, {"x^2"}), polys(r, {"x"}));
  EXPECT_TRUE(is_unit_ideal(sat));
  EXPECT_EQ(saturate(polys(r, {"x*y"}), polys(r, {"x"})), polys(r, {"y"}));
  EXPECT_EQ(saturate(polys(r, {"x"}), polys(r, {"y"})), polys(r, {"x"}));
}

TEST(Eliminate, Examples) {
  auto r = ring({"t", "x", "y"});
  auto par = eliminate(polys(r, {"x - t", "y - t^2"}), {0});
  ASSERT_EQ(par.size(), 1u);
  EXPECT_TRUE(equal_up_to_unit(par[0], parse_poly(r, "y - x^2")));
  EXPECT_TRUE(eliminate(polys(r, {"x - t"}), {0}).empty());
}

TEST(Eliminate, ThreefoldOfC2SixIsAP3) {
  const auto& e = entry("c2=6");
  Rng rng(5);
  RingPtr<QQ> zr;
  auto I = threefold_ideal(e.matrix, e.quadric, rng, GroebnerOptions{}, &zr);
  auto gb = groebner_basis(I);
  ASSERT_EQ(gb.size(), 2u);
  for (const auto& g : gb) EXPECT_EQ(g.degree(), 1);
  EXPECT_EQ(krull_dimension(gb, zr->nvars()), 4);
}
