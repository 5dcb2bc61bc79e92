#include <gtest/gtest.h>

#include "support.hpp"

using namespace pfafflab;
using namespace pfafflab::testing;

namespace {

/// Skew 6x6 with 15 independent variables.
SkewMatrix<QQ> generic6() {
  std::vector<std::string> names;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) names.push_back("x" + std::to_string(i) + std::to_string(j));
  auto r = make_ring(QQ{}, names);
  SkewMatrix<QQ> A(r, 6);
  std::size_t k = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) A.set(i, j, Poly<QQ>::variable(r, k++));
  return A;
}

Matrix<QQ> constant_skew(const Matrix<QQ>& M) {
  auto J = Matrix<QQ>(QQ{}, 4, 4);
  J(0, 1) = Rational(1);
  J(1, 0) = Rational(-1);
  J(2, 3) = Rational(1);
  J(3, 2) = Rational(-1);
  return M * J * M.transpose();
}

Matrix<QQ> evaluate_adjoint(const std::vector<std::vector<Poly<QQ>>>& P, std::span<const Rational> pt) {
  Matrix<QQ> m(QQ{}, 6, 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = P[i][j].eval(pt);
  return m;
}

/// The constant skew matrix as a skew matrix of constants in a one-variable ring.
SkewMatrix<QQ> as_poly(const Matrix<QQ>& m) {
  auto r = make_ring(QQ{}, {"t"});
  SkewMatrix<QQ> A(r, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.rows(); ++j) A.set(i, j, Poly<QQ>::constant(r, m(i, j)));
  return A;
}

}  // namespace

TEST(Pfaffian, TwoByTwoSignConvention) {
  SkewMatrix<QQ> A(abcd(), 2);
  A.set(0, 1, P("a"));
  EXPECT_EQ(pfaffian(A), P("a"));
}

TEST(Pfaffian, SkewLinesBlock) { EXPECT_EQ(pfaffian(block_skewlines(abcd())), P("b*c - a*d")); }

TEST(Pfaffian, OddSizeIsRejected) { EXPECT_THROW(pfaffian(SkewMatrix<QQ>(abcd(), 3)), std::invalid_argument); }

// The corpus (O+O(2)) matrix has an identically zero last row and column.
TEST(Pfaffian, OplusO2VanishesIdentically) {
  const auto& A = entry("O+O(2)").matrix;
  for (std::size_t i = 0; i < 6; ++i) EXPECT_TRUE(A(i, 5).is_zero());
  EXPECT_TRUE(pfaffian(A).is_zero());
}

TEST(PfaffianAdjoint, DefiningIdentityOnGenericMatrix) {
  auto A = generic6();
  auto adj = pfaffian_adjoint(A);
  auto pf = pfaffian(A);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Poly<QQ> s(A.ring());
      for (std::size_t k = 0; k < 6; ++k) s += A(i, k) * adj[k][j];
      EXPECT_EQ(s, i == j ? pf : Poly<QQ>(A.ring())) << i << "," << j;
    }
}

TEST(PfaffianAdjoint, RankFourHasKernelColumns) {
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    auto M = random_constant(6, 4, rng);
    if (M.rank() < 4) continue;
    auto A = as_poly(constant_skew(M));
    std::vector<Rational> t{Rational(0)};
    auto Ac = A.evaluate(t);
    ASSERT_EQ(Ac.rank(), 4u);
    auto Pm = evaluate_adjoint(pfaffian_adjoint(A), t);
    EXPECT_EQ(Pm.rank(), 2u);
    EXPECT_TRUE((Ac * Pm).is_zero());
  }
}

TEST(PfaffianAdjoint, RankTwoGivesZero) {
  Rng rng(32);
  auto M = random_constant(6, 2, rng);
  Matrix<QQ> J(QQ{}, 2, 2);
  J(0, 1) = Rational(1);
  J(1, 0) = Rational(-1);
  auto A = as_poly(M * J * M.transpose());
  std::vector<Rational> t{Rational(0)};
  EXPECT_TRUE(evaluate_adjoint(pfaffian_adjoint(A), t).is_zero());
}

TEST(PfaffianAdjoint, WrongSizeIsRejected) {
  EXPECT_THROW(pfaffian_adjoint(SkewMatrix<QQ>(abcd(), 4)), std::invalid_argument);
}

TEST(Compress, IdentityIsNoOp) {
  const auto& A = entry("c2=5").matrix;
  EXPECT_EQ(compress(A, Matrix<QQ>::identity(QQ{}, 6)), A);
}

TEST(Compress, RankDeficientIsRejected) {
  Matrix<QQ> M(QQ{}, 2, 6);
  M(0, 0) = M(1, 0) = Rational(1);
  EXPECT_THROW(compress(entry("c2=5").matrix, M), std::invalid_argument);
}

TEST(Identities, PfaffianSquaredIsDeterminant) {
  Rng rng(33);
  auto r = make_ring(QQ{}, {"s", "t"});
  for (std::size_t n : {2, 4, 6, 8})
    for (int k = 0; k < 25; ++k) {
      auto A = random_skew(r, n, rng, 1, 2);
      auto pf = pfaffian(A);
      EXPECT_EQ(pf * pf, laplace_det(full_matrix(A), r)) << "size " << n;
    }
}

TEST(Identities, CongruenceScalesByDeterminant) {
  Rng rng(34);
  auto r = make_ring(QQ{}, {"s", "t"});
  for (std::size_t n : {2, 4, 6, 8})
    for (int k = 0; k < 25; ++k) {
      auto A = random_skew(r, n, rng, 1, 2);
      auto M = random_invertible(n, rng);
      EXPECT_EQ(pfaffian(compress(A, M)), pfaffian(A).scaled(M.det())) << "size " << n;
    }
}

TEST(RankAt, KnownRankDropPoints) {
  EXPECT_EQ(entry("O(1)^2").matrix.rank_at(Q4(1, 0, 0, 1)), 2u);
  EXPECT_EQ(entry("O(1)^2").matrix.rank_at(Q4(0, 1, 1, 0)), 2u);
  EXPECT_EQ(entry("c2=6").matrix.rank_at(Q4(1, 0, 0, 0)), 2u);
  // Segre image of [1:1] x [1:2]
  EXPECT_EQ(entry("O+O(2)").matrix.rank_at(Q4(1, 2, 1, 2)), 4u);
}

TEST(RankAt, InvariantUnderCongruence) {
  Rng rng(35);
  for (const auto& e : corpus()) {
    auto M = random_invertible(6, rng);
    auto B = compress(e.matrix, M);
    for (int k = 0; k < 5; ++k) {
      auto pt = Q4(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9));
      EXPECT_EQ(B.rank_at(pt), e.matrix.rank_at(pt)) << e.id;
    }
  }
}

TEST(DirectSum, PointBlocksGiveCorpusMatrices) {
  auto P1 = block_point3(abcd(), Q4(1, 0, 0, 1));
  auto P2 = block_point3(abcd(), Q4(0, 1, 1, 0));
  EXPECT_EQ(direct_sum(P1, P2), entry("O(1)^2").matrix);
  EXPECT_EQ(direct_sum(P1, P1), entry("O(1)^2 bis").matrix);
}

TEST(DirectSum, EmptySummand) {
  const auto& A = entry("c2=3").matrix;
  EXPECT_EQ(direct_sum(A, SkewMatrix<QQ>(abcd(), 0)), A);
}

TEST(SkewMatrix, EntriesAreSkewByConstruction) {
  SkewMatrix<QQ> A(abcd(), 3);
  A.set(2, 0, P("a + b"));
  EXPECT_EQ(A(0, 2), P("-a - b"));
  EXPECT_TRUE(A(1, 1).is_zero());
  EXPECT_THROW(A.set(1, 1, P("a")), std::invalid_argument);
}
