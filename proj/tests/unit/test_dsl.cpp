#include <gtest/gtest.h>

#include "sydy/suite.hpp"

using namespace sydy;

TEST(Parse, Commutator) {
  const Relation r = parse_relation("[k1+(u), k1-(v)] = 0");
  const BracketNode* b = r.lhs->as<BracketNode>();
  ASSERT_NE(b, nullptr);
  EXPECT_FALSE(b->anti);
  const AtomNode* a = b->a->as<AtomNode>();
  const AtomNode* c = b->b->as<AtomNode>();
  ASSERT_TRUE(a && c);
  EXPECT_EQ(a->kind, AtomKind::k1);
  EXPECT_EQ(a->sign, AtomSign::plus);
  EXPECT_EQ(c->sign, AtomSign::minus);
  EXPECT_EQ(c->arg.var, Var::v);
  ASSERT_NE(r.rhs->as<ScalarNode>(), nullptr);
  EXPECT_TRUE(r.rhs->as<ScalarNode>()->value.is_zero());
}

TEST(Parse, Anticommutator) {
  const Relation r = parse_relation("{X+(u), X+(v)} = 0");
  const BracketNode* b = r.lhs->as<BracketNode>();
  ASSERT_NE(b, nullptr);
  EXPECT_TRUE(b->anti);
  EXPECT_EQ(parity_of(b->a), Parity::odd);
  EXPECT_EQ(parity_of(b->b), Parity::odd);
}

TEST(Parse, CentralShifts) {
  const Relation r = parse_relation("delta(u-, v+) = 0");
  const DeltaNode* d = r.lhs->as<DeltaNode>();
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->a.shift, central_shift(-1));
  EXPECT_EQ(d->b.shift, central_shift(1));
}

TEST(Parse, ExplicitShift) {
  const NodePtr n = parse_expression("E(u+hbar/2)");
  const AtomNode* a = n->as<AtomNode>();
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->sign, AtomSign::none);
  EXPECT_EQ(a->arg.value(), rf(Var::u) + RationalFunction(Rational(1, 2)) * rf(Var::hbar));
}

TEST(Parse, WhitespaceInsignificant) {
  EXPECT_TRUE(equal(parse_relation("[k1+(u),k2+(v)]=0"), parse_relation("  [ k1+ ( u ) , k2+(v) ]   =  0 ")));
}

TEST(Parse, Precedence) {
  const NodePtr n = parse_expression("k1+(u) + hbar*k2+(u)*e+(u)");
  const SumNode* s = n->as<SumNode>();
  ASSERT_NE(s, nullptr);
  ASSERT_EQ(s->terms.size(), 2u);
  EXPECT_NE(s->terms[1].second->as<MulNode>(), nullptr);
}

TEST(Render, Zero) { EXPECT_EQ(render_expression(parse_expression("0")), "0"); }

TEST(Render, NestedInverse) { EXPECT_EQ(render_expression(parse_expression("inv(k2-(v))")), "inv(k2-(v))"); }

TEST(RoundTrip, BuiltInSuite) {
  const auto suite = encode_paper_suite();
  EXPECT_EQ(suite.size(), 99u);
  for (const auto& s : suite) {
    const std::string text = render_relation(s.relation);
    const Relation again = parse_relation(text);
    EXPECT_TRUE(equal(again, s.relation)) << s.id << "\n" << text;
    EXPECT_EQ(render_relation(again), text) << s.id;
  }
}

namespace {

struct BadInput {
  const char* text;
  std::size_t start;
  std::size_t end;
  const char* fragment;
};

const BadInput kBad[] = {
    {"k1+(u", 5, 5, "expected ')'"},
    {"k1+(u) =", 8, 8, "expected an operand"},
    {"[k1+(u), e+(v)", 14, 14, "expected ']'"},
    {"{k1+(u), k1+(v)} = 0", 0, 16, "parity error"},
    {"q+(u) = 0", 0, 1, "unknown atom 'q'"},
    {"k1+(w) = 0", 4, 5, "expected a spectral variable"},
    {"k1+(u) k2+(v) = 0", 7, 9, "expected '='"},
    {"= 0", 0, 1, "expected an operand"},
    {"delta(u,u) = 0", 0, 10, "two distinct spectral variables"},
    {"k1+(u) = 0 0", 11, 12, "found '0'"},
    {"k1(u)=0", 2, 3, "needs a sign"},
    {"e+(u) / e+(v) = 0", 8, 13, "division is only defined by scalars"},
    {"1/0 = 0", 2, 3, "division by zero"},
    {"k1+(u) = $", 9, 10, "unexpected character '$'"},
    {"inv(0) = 0", 0, 6, "inverse of zero"},
    {"k1+(u+hbar/0)=0", 11, 12, "division by zero"},
    {"k1+(u)^2=0", 0, 8, "powers are only defined for scalars"},
};

}  // namespace

class Malformed : public ::testing::TestWithParam<BadInput> {};

TEST_P(Malformed, SpanAndMessage) {
  const BadInput& b = GetParam();
  try {
    parse_relation(b.text);
    FAIL() << "accepted " << b.text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start, b.start) << b.text;
    EXPECT_EQ(e.span().end, b.end) << b.text;
    EXPECT_EQ(e.span().column, b.start + 1);
    EXPECT_NE(e.message().find(b.fragment), std::string::npos) << e.what();
    try {
      parse_relation(b.text);
    } catch (const ParseError& again) {
      EXPECT_EQ(again.span(), e.span());
      EXPECT_EQ(std::string(again.what()), std::string(e.what()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, Malformed, ::testing::ValuesIn(kBad));

TEST(Errors, ExpectedSet) {
  try {
    parse_relation("k1+(u");
    FAIL();
  } catch (const ParseError& e) {
    ASSERT_FALSE(e.expected().empty());
    EXPECT_EQ(e.expected().front(), ")");
  }
}

TEST(Errors, LineAndColumn) {
  try {
    parse_relation("k1+(u) =\n  $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2u);
    EXPECT_EQ(e.span().column, 3u);
  }
}
