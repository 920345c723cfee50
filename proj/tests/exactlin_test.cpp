#include "latsum/exactlin.hpp"

#include <gtest/gtest.h>

#include <random>

#include "latsum/polytope.hpp"

namespace latsum {
namespace {

IntegerMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// Oracle: k-th determinantal divisor = gcd of all k x k minors. Invariant
// factors are ratios of consecutive determinantal divisors.
std::vector<Integer> invariant_factors_by_minors(const IntegerMatrix& m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  std::vector<Integer> det_div(n + 1);
  det_div[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    detail::for_each_combination(m.rows(), k, [&](const std::vector<std::size_t>& ri) {
      detail::for_each_combination(m.cols(), k, [&](const std::vector<std::size_t>& ci) {
        IntegerMatrix sub(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(ri[a], ci[b]);
        g = boost::multiprecision::gcd(g, determinant(sub));
      });
    });
    det_div[k] = abs(g);
  }
  std::vector<Integer> out(n);
  for (std::size_t k = 1; k <= n; ++k) out[k - 1] = det_div[k] == 0 ? Integer(0) : det_div[k] / det_div[k - 1];
  return out;
}

IntegerMatrix diagonal_matrix(const std::vector<Integer>& d, std::size_t rows, std::size_t cols) {
  IntegerMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

TEST(HermiteNormalForm, IdentityIsFixed) {
  auto id = IntegerMatrix::identity(2);
  auto res = hermite_normal_form(id);
  EXPECT_EQ(res.h, id);
  EXPECT_EQ(res.u, id);
}

TEST(HermiteNormalForm, PreservesDeterminantUpToSign) {
  IntegerMatrix m{{2, 4}, {1, 3}};
  auto res = hermite_normal_form(m);
  EXPECT_EQ(res.u * m, res.h);
  EXPECT_EQ(abs(determinant(res.h)), 2);
  EXPECT_EQ(abs(determinant(res.u)), 1);
  // Echelon with reduced entries above the pivot.
  EXPECT_EQ(res.h(1, 0), 0);
  EXPECT_GT(res.h(0, 0), 0);
  EXPECT_GE(res.h(0, 1), 0);
  EXPECT_LT(res.h(0, 1), res.h(1, 1));
}

TEST(HermiteNormalForm, ZeroMatrix) {
  IntegerMatrix z(2, 3);
  auto res = hermite_normal_form(z);
  EXPECT_TRUE(res.h.is_zero());
  EXPECT_EQ(res.u, IntegerMatrix::identity(2));
  EXPECT_EQ(res.rank, 0u);
}

TEST(HermiteNormalForm, RandomMatricesAreEchelonAndUnimodular) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 4, 6);
    auto res = hermite_normal_form(m);
    ASSERT_EQ(res.u * m, res.h);
    ASSERT_EQ(abs(determinant(res.u)), 1);
    std::size_t last_pivot_col = 0;
    for (std::size_t i = 0; i < res.h.rows(); ++i) {
      std::optional<std::size_t> piv;
      for (std::size_t j = 0; j < res.h.cols() && !piv; ++j)
        if (res.h(i, j) != 0) piv = j;
      if (!piv) {
        EXPECT_GE(i, res.rank);
        continue;
      }
      if (i > 0) {
        EXPECT_GT(*piv, last_pivot_col);
      }
      last_pivot_col = *piv;
      EXPECT_GT(res.h(i, *piv), 0);
      for (std::size_t k = 0; k < i; ++k) {
        EXPECT_GE(res.h(k, *piv), 0);
        EXPECT_LT(res.h(k, *piv), res.h(i, *piv));
      }
    }
  }
}

TEST(SmithNormalForm, DiagonalTwoThree) {
  IntegerMatrix m{{2, 0}, {0, 3}};
  auto snf = smith_normal_form(m);
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{1, 6}));
  EXPECT_EQ(invariant_factors_by_minors(m), snf.diagonal);
  EXPECT_EQ(snf.left * m * snf.right, diagonal_matrix(snf.diagonal, 2, 2));
}

TEST(SmithNormalForm, IdentityAndRowVector) {
  auto snf = smith_normal_form(IntegerMatrix::identity(3));
  EXPECT_EQ(snf.diagonal, (std::vector<Integer>{1, 1, 1}));
  auto row = smith_normal_form(IntegerMatrix{{1, 1}});
  EXPECT_EQ(row.diagonal, (std::vector<Integer>{1}));
}

TEST(SmithNormalForm, RandomMatricesMatchMinorOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    auto m = random_matrix(rng, rows, cols, 5);
    if (trial % 5 == 0) {
      // Inject a dependent row to get zero invariant factors.
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j);
    }
    auto snf = smith_normal_form(m);
    ASSERT_EQ(snf.left * m * snf.right, diagonal_matrix(snf.diagonal, rows, cols));
    ASSERT_EQ(abs(determinant(snf.left)), 1);
    ASSERT_EQ(abs(determinant(snf.right)), 1);
    for (std::size_t i = 0; i + 1 < snf.diagonal.size(); ++i) {
      if (snf.diagonal[i] == 0) {
        EXPECT_EQ(snf.diagonal[i + 1], 0);
      } else {
        EXPECT_EQ(snf.diagonal[i + 1] % snf.diagonal[i], 0);
      }
    }
    EXPECT_EQ(snf.diagonal, invariant_factors_by_minors(m));
  }
}

TEST(IntegerKernel, Examples) {
  auto k1 = integer_kernel(IntegerMatrix{{1, 1}});
  ASSERT_EQ(k1.cols(), 1u);
  EXPECT_EQ(k1.col_int64(0), (std::vector<std::int64_t>{1, -1}));

  EXPECT_EQ(integer_kernel(IntegerMatrix::identity(3)).cols(), 0u);

  auto k3 = integer_kernel(IntegerMatrix{{1, 0, -1}, {0, 1, -1}});
  ASSERT_EQ(k3.cols(), 1u);
  EXPECT_EQ(k3.col_int64(0), (std::vector<std::int64_t>{1, 1, 1}));
}

TEST(IntegerKernel, SaturatedAndComplementaryRank) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + trial % 3, cols = 2 + (trial / 3) % 4;
    auto m = random_matrix(rng, rows, cols, 4);
    auto k = integer_kernel(m);
    EXPECT_EQ(rank(m) + k.cols(), cols);
    EXPECT_TRUE((m * k).is_zero());
    if (k.cols() > 0) {
      // Saturated: all invariant factors of the basis equal 1.
      for (const auto& d : smith_normal_form(k).diagonal) EXPECT_EQ(d, 1);
    }
  }
}

LinearConstraint ge(std::vector<int> c, int rhs, Relation rel = Relation::GreaterEqual) {
  RationalVector v;
  for (int x : c) v.emplace_back(x);
  return {v, rel, Rational(rhs)};
}

TEST(RationalFeasible, Examples) {
  EXPECT_FALSE(rational_feasible({ge({1}, 0), ge({-1}, 1)}, 1).feasible);

  auto sat = rational_feasible({ge({1, 0}, 0, Relation::Greater), ge({0, 1}, 0, Relation::Greater),
                                ge({1, 1}, 0, Relation::Greater)},
                               2);
  ASSERT_TRUE(sat.feasible);
  EXPECT_EQ(sat.witness, (RationalVector{1, 1}));

  // Strictness matters: x >= 0, -x >= 0 is the single point 0; x > 0 kills it.
  EXPECT_TRUE(rational_feasible({ge({1}, 0), ge({-1}, 0)}, 1).feasible);
  EXPECT_FALSE(rational_feasible({ge({1}, 0, Relation::Greater), ge({-1}, 0)}, 1).feasible);
}

TEST(RationalFeasible, EqualitiesAndRationalWitness) {
  // 2x = 1, y > x, y < 1  -> x = 1/2, y in (1/2, 1).
  auto res = rational_feasible({ge({2, 0}, 1, Relation::Equal), ge({-1, 1}, 0, Relation::Greater),
                                ge({0, -1}, -1, Relation::Greater)},
                               2);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.witness[0], Rational(1, 2));
  EXPECT_GT(res.witness[1], Rational(1, 2));
  EXPECT_LT(res.witness[1], Rational(1));
  EXPECT_FALSE(rational_feasible({ge({1, 1}, 1, Relation::Equal), ge({1, 1}, 2, Relation::Equal)}, 2).feasible);
}

TEST(RationalFeasible, PlantedSystems) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 4;
    std::vector<int> planted(n);
    for (auto& x : planted) x = coef(rng);
    std::vector<LinearConstraint> sys;
    for (int k = 0; k < 6; ++k) {
      std::vector<int> c(n);
      int val = 0;
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = coef(rng);
        val += c[i] * planted[i];
      }
      const int kind = k % 3;
      if (kind == 0) sys.push_back(ge(c, val - 1, Relation::Greater));
      if (kind == 1) sys.push_back(ge(c, val, Relation::GreaterEqual));
      if (kind == 2 && k == 2) sys.push_back(ge(c, val, Relation::Equal));
    }
    auto res = rational_feasible(sys, n);
    ASSERT_TRUE(res.feasible) << "trial " << trial;

    // Contradict: a.x >= b and a.x < b.
    std::vector<int> c(n);
    for (auto& x : c) x = coef(rng);
    c[0] = 1;
    sys.push_back(ge(c, 3));
    std::vector<int> neg(c);
    for (auto& x : neg) x = -x;
    sys.push_back(ge(neg, -3, Relation::Greater));
    EXPECT_FALSE(rational_feasible(sys, n).feasible) << "trial " << trial;
  }
}

TEST(RationalFeasible, DimensionMismatchThrows) {
  EXPECT_THROW(rational_feasible({ge({1, 2}, 0)}, 3), DomainError);
}

TEST(RowSpace, RankAndPivots) {
  RowSpace s;
  EXPECT_TRUE(s.insert_dense(std::vector<std::int64_t>{0, 2, 4}));
  EXPECT_FALSE(s.insert_dense(std::vector<std::int64_t>{0, 1, 2}));
  EXPECT_TRUE(s.insert_dense(std::vector<std::int64_t>{1, 0, 0}));
  EXPECT_EQ(s.rank(), 2u);
  EXPECT_EQ(s.pivot_columns(), (std::vector<std::size_t>{0, 1}));
}

TEST(Narrowing, OverflowThrows) {
  EXPECT_THROW(to_int64(Integer(1) << 70), DomainError);
  EXPECT_THROW(checked_mul(std::int64_t(1) << 40, std::int64_t(1) << 40), DomainError);
  EXPECT_EQ(floor_div(Integer(-7), Integer(2)), -4);
  EXPECT_EQ(floor_of(Rational(-1, 3)), -1);
  EXPECT_EQ(ceil_of(Rational(-1, 3)), 0);
}

}  // namespace
}  // namespace latsum
