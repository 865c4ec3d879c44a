#include <random>

#include <gtest/gtest.h>

#include "sydy/relcheck.hpp"

using namespace sydy;

namespace {

const RationalFunction u = rf(Var::u);
const RationalFunction w = rf(Var::w);
const RationalFunction h = rf(Var::hbar);

RationalFunction power(const RationalFunction& x, long k) {
  RationalFunction r(1);
  const RationalFunction b = k < 0 ? x.inverse() : x;
  for (long i = 0; i < std::labs(k); ++i) r *= b;
  return r;
}

Polynomial random_poly(std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Polynomial p;
  for (int t = 0; t < 3; ++t) {
    Polynomial m(coef(rng));
    for (int d = deg(rng); d > 0; --d) m *= Polynomial::var(d % 2 ? Var::u : Var::w);
    if (deg(rng) % 2) m *= Polynomial::var(Var::hbar);
    p += m;
  }
  return p;
}

// Denominator with a nonzero constant term in u and positive degree in u.
Polynomial random_denominator(std::mt19937& rng) {
  Polynomial q;
  while (q.coefficients_in(Var::u).size() < 2 || q.coefficients_in(Var::u)[0].is_zero())
    q = random_poly(rng, 3) + Polynomial::var(Var::u) + Polynomial::var(Var::w) + Polynomial(2);
  return q;
}

}  // namespace

TEST(ExpandAtInfinity, SimplePole) {
  const ScalarSeries s = expand_at_infinity((u - w).inverse(), Var::u, 4);
  EXPECT_TRUE(s[0].is_zero());
  for (long k = 1; k <= 4; ++k) EXPECT_EQ(s[-k], power(w, k - 1));
  EXPECT_THROW(s[-5], WindowExhausted);
  EXPECT_TRUE(s[3].is_zero());
}

TEST(ExpandAtInfinity, EvaluationEntry) {
  const ScalarSeries s = expand_at_infinity((u - w) / (u - w + h), Var::u, 2);
  EXPECT_EQ(s[0], RationalFunction(1));
  EXPECT_EQ(s[-1], -h);
  EXPECT_EQ(s[-2], h * (h - w));
}

TEST(ExpandAtInfinity, PolynomialIsExact) {
  const ScalarSeries s = expand_at_infinity(u * u + w, Var::u, 1);
  EXPECT_EQ(s[2], RationalFunction(1));
  EXPECT_EQ(s[0], w);
  EXPECT_TRUE(s[-100].is_zero());
  EXPECT_TRUE(s[100].is_zero());
}

TEST(ExpandAtZero, SimplePole) {
  const ScalarSeries s = expand_at_zero((u - w).inverse(), Var::u, 3);
  for (long k = 0; k <= 3; ++k) EXPECT_EQ(s[k], -power(w, -k - 1));
  EXPECT_TRUE(s[-1].is_zero());
  EXPECT_THROW(s[4], WindowExhausted);
}

TEST(ExpandAtZero, ShiftedPole) {
  const ScalarSeries s = expand_at_zero((u - w + h).inverse(), Var::u, 1);
  EXPECT_EQ(s[0], (h - w).inverse());
  EXPECT_EQ(s[1], -power(h - w, -2));
}

TEST(ExpandAtZero, PoleAtOrigin) { EXPECT_THROW(expand_at_zero(u.inverse(), Var::u, 2), ZeroDivisionError); }

TEST(Delta, DifferenceOfExpansions) {
  const RationalFunction f = (u - w).inverse();
  const ScalarSeries inf = expand_at_infinity(f, Var::u, 8);
  const ScalarSeries zero = expand_at_zero(f, Var::u, 8);
  const DeltaSeries delta{Var::u, Var::w};
  for (long k = -8; k <= 7; ++k) {
    RationalFunction expected;
    for (long j = -9; j <= 9; ++j)
      if (delta.coefficient(k, j) != 0) expected += power(w, j);
    EXPECT_EQ(inf[k] - zero[k], expected) << "mode " << k;
    EXPECT_EQ(inf[k] - zero[k], power(w, -k - 1));
  }
}

TEST(SeriesMul, Laurent) {
  const ScalarSeries a = expand_at_infinity(1 + u.inverse(), Var::u, 5);
  const ScalarSeries b = expand_at_infinity(1 - u.inverse(), Var::u, 5);
  const ScalarSeries p = series_mul(a, b);
  EXPECT_EQ(p[0], RationalFunction(1));
  EXPECT_TRUE(p[-1].is_zero());
  EXPECT_EQ(p[-2], RationalFunction(-1));
  EXPECT_TRUE(p[-3].is_zero());
}

TEST(SeriesMul, WindowShrinks) {
  const ScalarSeries a = expand_at_infinity((u - w).inverse(), Var::u, 4);
  const ScalarSeries p = series_mul(a, a);
  EXPECT_EQ(p[-2], RationalFunction(1));
  EXPECT_EQ(p[-3], 2 * w);
  EXPECT_EQ(p.window(), (ModeInterval{-5, -2}));
  EXPECT_THROW(p[-6], WindowExhausted);
}

TEST(SeriesMul, OppositeRegionsHaveNoWindow) {
  const ScalarSeries a = expand_at_infinity((u - w).inverse(), Var::u, 4);
  const ScalarSeries b = expand_at_zero((u - w).inverse(), Var::u, 4);
  EXPECT_THROW(series_mul(a, b), WindowExhausted);
}

TEST(SeriesMul, CommonVariable) {
  const ScalarSeries a = expand_at_infinity((u - w).inverse(), Var::u, 2);
  const ScalarSeries b = expand_at_infinity((w - u).inverse(), Var::w, 2);
  EXPECT_THROW(series_mul(a, b), Error);
}

TEST(OperatorExpand, EvaluationL11) {
  const LOperator l = build_eval_L(Var::w);
  const OperatorSeries s = expand(l.l(1, 1), Var::u, Region::infinity, 3);
  EXPECT_EQ(s[0], GradedMatrix::identity(GradedSpace::gl11()));
  EXPECT_EQ(s[-1].at(0, 0), -h);
  EXPECT_EQ(s[-1].at(1, 1), -2 * h);
}

class ExpansionProperty : public ::testing::TestWithParam<int> {};

// q·s reproduces p on every mode whose contributions lie in the exact window.
TEST_P(ExpansionProperty, DenominatorTimesSeries) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()));
  const Polynomial p = random_poly(rng, 3);
  const Polynomial q = random_denominator(rng);
  const RationalFunction f = RationalFunction(p) / RationalFunction(q);
  const std::vector<Polynomial> pc = f.numerator().coefficients_in(Var::u);
  const std::vector<Polynomial> qc = f.denominator().coefficients_in(Var::u);
  for (Region r : {Region::infinity, Region::zero}) {
    const ScalarSeries s = expand(f, Var::u, r, 6);
    const ModeInterval win = s.window();
    for (long m = win.lo - 3; m <= win.hi + 3; ++m) {
      RationalFunction acc;
      bool exact = true;
      for (std::size_t j = 0; j < qc.size() && exact; ++j) {
        if (!s.exact_at(m - static_cast<long>(j))) {
          exact = false;
          break;
        }
        acc += RationalFunction(qc[j]) * s[m - static_cast<long>(j)];
      }
      if (!exact) continue;
      const RationalFunction want = m >= 0 && m < static_cast<long>(pc.size()) ? RationalFunction(pc[static_cast<std::size_t>(m)]) : RationalFunction();
      EXPECT_EQ(acc, want) << "mode " << m;
    }
  }
}

TEST_P(ExpansionProperty, FractionFreeAgrees) {
  std::mt19937 rng(static_cast<unsigned>(GetParam()) + 1000);
  const RationalFunction f = RationalFunction(random_poly(rng, 3)) / RationalFunction(random_denominator(rng));
  for (Region r : {Region::infinity, Region::zero}) {
    const ScalarSeries s = expand(f, Var::u, r, 5);
    const detail::FracSeries fs = detail::frac_expand(f, Var::u, r, 5);
    EXPECT_EQ(fs.series.window(), s.window());
    for (long m = s.window().lo; !s.window().empty() && m <= s.window().hi; ++m) {
      const detail::FracCoef& fc = fs.series[m];
      const RationalFunction val = RationalFunction(fc.num) / power(RationalFunction(fs.base), fc.power);
      EXPECT_EQ(fc.is_zero() ? RationalFunction() : val, s[m]) << "mode " << m;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExpansionProperty, ::testing::Range(1, 21));
