#include "latsum/fan.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace latsum {
namespace {

using testing::figure_p;
using testing::figure_p_prime;
using testing::random_complete_fan_2d;
using testing::unit_square;

Fan hexagon_fan() { return normal_fan(minkowski_sum(figure_p(), figure_p_prime())); }

// Oracle for simplicial fans: the local section on sigma is the unique
// solution of <m, n_j> = -a_j for j in sigma.
RationalVector simplicial_section(const Fan& f, const TorusDivisor& d, std::size_t c) {
  std::vector<RationalVector> a;
  RationalVector b;
  for (auto j : f.cones()[c]) {
    a.emplace_back(f.rays()[j].begin(), f.rays()[j].end());
    b.emplace_back(-d[j]);
  }
  return *solve_square(a, b);
}

int nef_oracle(const Fan& f, const TorusDivisor& d) {
  // 0: not nef, 1: nef, 2: ample (strict and distinct).
  bool strict = true;
  std::vector<RationalVector> secs;
  for (std::size_t c = 0; c < f.cones().size(); ++c) {
    auto m = simplicial_section(f, d, c);
    for (std::size_t j = 0; j < f.num_rays(); ++j) {
      if (std::binary_search(f.cones()[c].begin(), f.cones()[c].end(), j)) continue;
      Rational s = 0;
      for (std::size_t i = 0; i < f.dim(); ++i) s += m[i] * f.rays()[j][i];
      if (s < -d[j]) return 0;
      if (s == -d[j]) strict = false;
    }
    secs.push_back(m);
  }
  return strict ? 2 : 1;
}

TEST(NormalFan, Examples) {
  auto sq = normal_fan(unit_square());
  EXPECT_EQ(sq.num_rays(), 4u);
  EXPECT_EQ(sq.cones().size(), 4u);
  EXPECT_TRUE(sq.complete());
  std::vector<LatticePoint> rays = sq.rays();
  std::sort(rays.begin(), rays.end());
  EXPECT_EQ(rays, (std::vector<LatticePoint>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}));

  auto tri = normal_fan(figure_p());
  rays = tri.rays();
  std::sort(rays.begin(), rays.end());
  EXPECT_EQ(rays, (std::vector<LatticePoint>{{-1, -1}, {0, 1}, {1, 0}}));

  auto hex = hexagon_fan();
  EXPECT_EQ(hex.num_rays(), 6u);
  EXPECT_TRUE(hex.complete());
  EXPECT_THROW(normal_fan(hull({{0, 0}, {1, 1}})), DomainError);
}

TEST(FanValidation, RejectsBadInput) {
  EXPECT_THROW(Fan(2, {{2, 0}, {0, 1}}, {{0, 1}}), DomainError);            // not primitive
  EXPECT_THROW(Fan(2, {{1, 0}, {1, 0}}, {{0, 1}}), DomainError);            // duplicate
  EXPECT_THROW(Fan(2, {{1, 0}, {-1, 0}}, {{0, 1}}), DomainError);           // not full-dimensional
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}}), DomainError); // (1,1) not extreme
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}}, {{0, 5}}), DomainError);
  EXPECT_THROW(Fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1, 2}}), DomainError);  // half plane
}

TEST(FanValidation, Completeness) {
  EXPECT_TRUE(projective_space_fan(1).complete());
  EXPECT_TRUE(projective_space_fan(2).complete());
  EXPECT_TRUE(projective_space_fan(3).complete());
  Fan quadrant(2, {{1, 0}, {0, 1}}, {{0, 1}});
  EXPECT_FALSE(quadrant.complete());
  EXPECT_FALSE(quadrant.completeness_issue().empty());
  // Overlapping cones fail the facet-matching test.
  Fan overlap(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}},
              {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
  EXPECT_FALSE(overlap.complete());
  EXPECT_THROW(is_nef(quadrant, TorusDivisor{0, 0}), DomainError);
}

TEST(FanValidation, ThreeDimensionalNormalFans) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = testing::random_polytope(rng, 3, -2, 2, 7);
    auto f = normal_fan(p);
    EXPECT_TRUE(f.complete()) << f.completeness_issue();
  }
  auto cube = hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  auto oct = normal_fan(cube);
  EXPECT_EQ(oct.num_rays(), 6u);
  EXPECT_EQ(oct.cones().size(), 8u);
}

TEST(DivisorPolytope, Examples) {
  auto f = normal_fan(figure_p());
  auto d = polytope_divisor(f, figure_p());
  EXPECT_EQ(divisor_polytope(f, d), figure_p());
  EXPECT_EQ(divisor_polytope(f, TorusDivisor::zero(3)), hull({{0, 0}}));

  auto hex = hexagon_fan();
  auto dp = polytope_divisor(hex, figure_p());
  EXPECT_EQ(divisor_polytope(hex, dp), figure_p());
  EXPECT_EQ(divisor_polytope(hex, polytope_divisor(hex, figure_p_prime())), figure_p_prime());
  EXPECT_THROW(polytope_divisor(f, unit_square()), DomainError);

  // Empty P_D: the degree -1 class on the projective plane.
  auto p2 = projective_space_fan(2);
  EXPECT_TRUE(divisor_polytope(p2, TorusDivisor{-1, 0, 0}).is_empty());
}

TEST(DivisorPolytope, NonLatticeVertexIsReported) {
  // Weighted projective plane P(1,1,2): rays (1,0),(0,1),(-1,-2); D_3 is not Cartier.
  Fan f(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_THROW(divisor_polytope(f, TorusDivisor{0, 0, 1}), DomainError);
  EXPECT_EQ(divisor_lattice_points(f.rays(), 2, TorusDivisor{0, 0, 1}).size(), 2u);
}

TEST(DivisorPolytope, RoundTripOnRandomPolytopes) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = trial % 4 == 3 ? testing::random_polytope(rng, 3, -2, 2, 6) : testing::random_polygon(rng, -5, 5);
    auto f = normal_fan(p);
    EXPECT_EQ(divisor_polytope(f, polytope_divisor(f, p)), p);
    EXPECT_TRUE(is_ample(f, polytope_divisor(f, p)).ample);
  }
}

TEST(Nef, Examples) {
  auto p2 = projective_space_fan(2);
  auto zero = is_nef(p2, TorusDivisor::zero(3));
  ASSERT_TRUE(zero.nef);
  for (const auto& m : zero.sections) EXPECT_EQ(m, (RationalVector{0, 0}));
  auto bad = is_nef(p2, TorusDivisor{-1, 0, 0});
  EXPECT_FALSE(bad.nef);
  EXPECT_TRUE(bad.failingCone.has_value());
  EXPECT_TRUE(is_ample(p2, TorusDivisor{1, 0, 0}).ample);
  EXPECT_FALSE(is_ample(p2, TorusDivisor::zero(3)).ample);

  auto hex = hexagon_fan();
  auto dp = polytope_divisor(hex, figure_p());
  EXPECT_TRUE(is_nef(hex, dp).nef);
  EXPECT_FALSE(is_ample(hex, dp).ample);
  EXPECT_TRUE(is_ample(hex, polytope_divisor(hex, minkowski_sum(figure_p(), figure_p_prime()))).ample);
}

TEST(Nef, CertificatesSatisfyTheirConstraints) {
  auto hex = hexagon_fan();
  auto d = polytope_divisor(hex, figure_p_prime());
  auto v = is_nef(hex, d);
  ASSERT_TRUE(v.nef);
  ASSERT_EQ(v.sections.size(), hex.cones().size());
  for (std::size_t c = 0; c < hex.cones().size(); ++c)
    for (std::size_t j = 0; j < hex.num_rays(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < 2; ++i) s += v.sections[c][i] * hex.rays()[j][i];
      const bool in = std::binary_search(hex.cones()[c].begin(), hex.cones()[c].end(), j);
      if (in) {
        EXPECT_EQ(s, -d[j]);
      } else {
        EXPECT_GE(s, -d[j]);
      }
    }
}

TEST(Nef, MatchesSimplicialOracleOnRandomFans) {
  std::mt19937_64 rng(17);
  int nef_count = 0, ample_count = 0;
  for (int trial = 0; trial < 150; ++trial) {
    auto f = random_complete_fan_2d(rng);
    TorusDivisor d = TorusDivisor::zero(f.num_rays());
    for (auto& a : d.coefficients) a = testing::uniform(rng, -2, 4);
    const int want = nef_oracle(f, d);
    const bool nef = is_nef(f, d).nef, ample = is_ample(f, d).ample;
    EXPECT_EQ(nef, want >= 1) << "trial " << trial;
    EXPECT_EQ(ample, want == 2) << "trial " << trial;
    if (ample) {
      EXPECT_TRUE(nef);
    }
    nef_count += nef;
    ample_count += ample;
  }
  EXPECT_GT(nef_count, 5);
  EXPECT_GT(ample_count, 2);
}

TEST(Nef, AdditivityAndSupportFunctions) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = testing::random_polygon(rng, -3, 3, 5);
    auto b = testing::random_polygon(rng, -3, 3, 5);
    auto f = normal_fan(minkowski_sum(a, b));
    auto da = polytope_divisor(f, a), db = polytope_divisor(f, b);
    ASSERT_TRUE(is_nef(f, da).nef);
    ASSERT_TRUE(is_nef(f, db).nef);
    EXPECT_TRUE(is_nef(f, da + db).nef);
    EXPECT_EQ(divisor_polytope(f, da + db), minkowski_sum(divisor_polytope(f, da), divisor_polytope(f, db)));
  }
}

TEST(TorusDivisorOps, Arithmetic) {
  TorusDivisor a{1, -2, 3}, b{0, 2, 1};
  EXPECT_EQ(a + b, (TorusDivisor{1, 0, 4}));
  EXPECT_EQ(a - b, (TorusDivisor{1, -4, 2}));
  EXPECT_FALSE(a.effective());
  EXPECT_TRUE(b.effective());
  EXPECT_EQ(TorusDivisor::unit(3, 1), (TorusDivisor{0, 1, 0}));
}

}  // namespace
}  // namespace latsum
