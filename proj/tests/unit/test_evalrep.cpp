#include <gtest/gtest.h>

#include "sydy/evalrep.hpp"

using namespace sydy;

namespace {

const GradedSpace W = GradedSpace::gl11();
const RationalFunction u = rf(Var::u);
const RationalFunction w = rf(Var::w);
const RationalFunction h = rf(Var::hbar);
const RationalFunction x = u - w;

GradedMatrix diag(const RationalFunction& a, const RationalFunction& b) {
  GradedMatrix m(W);
  m.set(0, 0, a);
  m.set(1, 1, b);
  return m;
}

}  // namespace

TEST(BuildEvalL, Entries) {
  const LOperator l = build_eval_L(Var::w);
  EXPECT_EQ(l.l(0, 0), diag(1, x / (x + h)));
  EXPECT_EQ(l.l(0, 1), GradedMatrix::unit(W, 1, 0, h / (x + h)));
  EXPECT_EQ(l.l(1, 0), GradedMatrix::unit(W, 0, 1, h / (x + h)));
  EXPECT_EQ(l.l(1, 1), diag(x / (x + h), (x - h) / (x + h)));
}

TEST(BuildEvalL, ParityOfEntries) {
  const LOperator l = build_eval_L(Var::w);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(l.l(i, j).parity(), static_cast<Parity>((i + j) % 2));
}

TEST(Rll, EvaluationRepresentation) { EXPECT_TRUE(check_rll(build_eval_L(Var::w)).passed()); }

TEST(Rll, TrivialRepresentation) { EXPECT_TRUE(check_rll(trivial_L()).passed()); }

TEST(Rll, OtherFactorAsAuxiliarySpace) { EXPECT_TRUE(check_rll(build_eval_L_aux_second(Var::w)).passed()); }

TEST(Rll, FlippedOddEntryFails) {
  LOperator l = build_eval_L(Var::w);
  l.l(0, 1) = -l.l(0, 1);
  const CheckReport r = check_rll(l);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_TRUE(r.witness);
}

TEST(Rll, ReversedArgumentFails) {
  LOperator l = LOperator::from_block(r_matrix_at(w - u), W);
  EXPECT_EQ(check_rll(l).verdict, Verdict::fail);
}

TEST(Gauss, Currents) {
  const CurrentSet c = gauss_decompose(build_eval_L(Var::w));
  EXPECT_EQ(c.k1, diag(1, x / (x + h)));
  EXPECT_EQ(c.e, GradedMatrix::unit(W, 1, 0, h / x));
  EXPECT_EQ(c.f, GradedMatrix::unit(W, 0, 1, h / x));
  EXPECT_EQ(c.k2, diag((x - h) / x, (x - h) / (x + h)));
  EXPECT_EQ(inverse(c.k1) * c.k2, GradedMatrix::scalar(W, (x - h) / x));
}

TEST(Gauss, Recomposition) {
  const LOperator l = build_eval_L(Var::w);
  EXPECT_EQ(recompose(gauss_decompose(l)).entries, l.entries);
}

TEST(Gauss, TrivialRepresentation) {
  const LOperator l = trivial_L();
  const CurrentSet c = gauss_decompose(l);
  EXPECT_EQ(c.k1, GradedMatrix::identity(l.quantum));
  EXPECT_EQ(c.k2, GradedMatrix::identity(l.quantum));
  EXPECT_TRUE(c.e.is_zero());
  EXPECT_TRUE(c.f.is_zero());
}

TEST(Gauss, DegenerateK1) {
  LOperator l = build_eval_L(Var::w);
  l.l(0, 0) = GradedMatrix(W);
  EXPECT_THROW(gauss_decompose(l), DegenerateInput);
}

TEST(InvertL, MatchesDirectInverse) {
  const LOperator l = build_eval_L(Var::w);
  const LOperator li = invert_L(l, gauss_decompose(l));
  EXPECT_EQ(li.block(), inverse(l.block()));
  EXPECT_EQ((l * li).entries, identity_L(l).entries);
  EXPECT_EQ((li * l).entries, identity_L(l).entries);
}

TEST(InvertL, FirstEntryFormula) {
  const LOperator l = build_eval_L(Var::w);
  const CurrentSet c = gauss_decompose(l);
  EXPECT_EQ(invert_L(l, c).l(0, 0), inverse(c.k1) + c.e * inverse(c.k2) * c.f);
}

TEST(InvertL, Trivial) {
  const LOperator l = trivial_L();
  EXPECT_EQ(invert_L(l, gauss_decompose(l)).entries, l.entries);
}

TEST(Transform, KIsScalar) {
  const CurrentSet c = transform_currents(gauss_decompose(build_eval_L(Var::w)));
  const RationalFunction half = RationalFunction(Rational(1, 2)) * h;
  EXPECT_EQ(c.K, GradedMatrix::scalar(W, (x - half) / (x + half)));
}

TEST(Transform, HEntrywise) {
  const CurrentSet g = gauss_decompose(build_eval_L(Var::w));
  const CurrentSet c = transform_currents(g);
  const RationalFunction half = RationalFunction(Rational(1, 2)) * h;
  // k1(u-ħ/2)·k2(u+ħ/2), both diagonal
  const RationalFunction a = RationalFunction(1) * ((x + half - h) / (x + half));
  const RationalFunction b = ((x - half) / (x - half + h)) * ((x + half - h) / (x + half + h));
  EXPECT_EQ(c.H, diag(a, b));
  EXPECT_EQ(c.E, GradedMatrix::unit(W, 1, 0, h / (x + half)));
}

TEST(Transform, TrivialRepresentation) {
  const CurrentSet c = transform_currents(gauss_decompose(trivial_L()));
  EXPECT_EQ(c.K, GradedMatrix::identity(c.quantum));
  EXPECT_EQ(c.H, GradedMatrix::identity(c.quantum));
  EXPECT_TRUE(c.E.is_zero());
  EXPECT_TRUE(c.F.is_zero());
}

TEST(Transform, Parities) {
  const CurrentSet c = transform_currents(gauss_decompose(build_eval_L(Var::w)));
  for (const GradedMatrix* m : {&c.k1, &c.k2, &c.K, &c.H}) EXPECT_EQ(m->parity(), Parity::even);
  for (const GradedMatrix* m : {&c.e, &c.f, &c.E, &c.F}) EXPECT_EQ(m->parity(), Parity::odd);
}
