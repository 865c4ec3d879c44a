#include <gtest/gtest.h>

#include "sydy/rmatrix.hpp"
#include "sydy/series.hpp"

using namespace sydy;

namespace {

const RationalFunction u = rf(Var::u);
const RationalFunction h = rf(Var::hbar);

// The displayed 4×4 matrix, typed in entry by entry.
GradedMatrix displayed() {
  GradedMatrix m(tensor(GradedSpace::gl11(), GradedSpace::gl11()));
  m.set(0, 0, 1);
  m.set(1, 1, u / (u + h));
  m.set(1, 2, h / (u + h));
  m.set(2, 1, h / (u + h));
  m.set(2, 2, u / (u + h));
  m.set(3, 3, (u - h) / (u + h));
  return m;
}

}  // namespace

TEST(BuildR, MatchesTheDisplayedMatrix) { EXPECT_EQ(build_r(Var::u).matrix, displayed()); }

TEST(BuildR, OddOddDiagonalEntry) { EXPECT_EQ(build_r(Var::u).matrix.at(3, 3), (u - h) / (u + h)); }

TEST(BuildR, AtZeroIsTheSuperPermutation) {
  EXPECT_EQ(build_r(Var::u).at(RationalFunction()), super_permutation(GradedSpace::gl11()));
}

TEST(BuildR, LimitAtInfinityIsIdentity) {
  const RMatrix r = build_r(Var::u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const ScalarSeries s = expand_at_infinity(r.matrix.at(i, j), Var::u, 2);
      EXPECT_EQ(s[0], RationalFunction(i == j ? 1 : 0));
      EXPECT_TRUE(s.coeffs().empty() || s.coeffs().rbegin()->first <= 0);
    }
}

TEST(Ybe, HoldsExactly) {
  const CheckReport r = check_sybe(build_r(Var::u));
  EXPECT_TRUE(r.passed());
  EXPECT_LT(r.millis, 5000);
}

TEST(Ybe, TamperedOddOddEntryFails) {
  RMatrix r = build_r(Var::u);
  r.matrix.set(3, 3, 1);
  const CheckReport rep = check_sybe(r);
  EXPECT_EQ(rep.verdict, Verdict::fail);
  ASSERT_TRUE(rep.witness);
  EXPECT_FALSE(rep.witness->location.empty());
}

TEST(Ybe, SignFlipOfTheOddOddEntryFails) {
  RMatrix r = build_r(Var::u);
  r.matrix.set(3, 3, -r.matrix.at(3, 3));
  EXPECT_EQ(check_sybe(r).verdict, Verdict::fail);
}

TEST(Ybe, IdentityAtZeroHbar) {
  RMatrix r = build_r(Var::u);
  r.matrix = r.matrix.substitute(Var::hbar, RationalFunction());
  EXPECT_EQ(r.matrix, GradedMatrix::identity(r.matrix.rows()));
  EXPECT_TRUE(check_sybe(r).passed());
}

TEST(Unitarity, Holds) { EXPECT_TRUE(check_unitarity(build_r(Var::u)).passed()); }

TEST(Unitarity, RescaledRFails) {
  RMatrix r = build_r(Var::u);
  r.matrix = (u / (u + h)) * r.matrix;
  EXPECT_EQ(check_unitarity(r).verdict, Verdict::fail);
}

TEST(Weight, Holds) { EXPECT_TRUE(check_weight_conservation(build_r(Var::u)).passed()); }

TEST(Weight, ViolationReportsIndex) {
  GradedMatrix m = build_r(Var::u).matrix;
  m.set(0, 1, 1);
  const CheckReport r = check_weight_conservation(m);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->location, "(11),(12)");
}

TEST(Weight, ZeroMatrixPasses) {
  EXPECT_TRUE(check_weight_conservation(GradedMatrix(tensor(GradedSpace::gl11(), GradedSpace::gl11()))).passed());
}

TEST(BuildR, MinusIdentityVanishesAtInfinity) {
  const GradedMatrix d = build_r(Var::u).matrix - GradedMatrix::identity(tensor(GradedSpace::gl11(), GradedSpace::gl11()));
  for (const auto& [ij, x] : d.entries()) EXPECT_LT(x.numerator().degree(Var::u), x.denominator().degree(Var::u));
}
