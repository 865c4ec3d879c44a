#include <gtest/gtest.h>

#include "sydy/modealg.hpp"

using namespace sydy;

namespace {

const GradedSpace W = GradedSpace::gl11();
const RationalFunction w = rf(Var::w);
const RationalFunction h = rf(Var::hbar);

const std::vector<ModeRelation>& plus_plus() {
  static const auto r = extract_mode_relations(Family::plus_plus, 2);
  return r;
}

GradedMatrix e22(const RationalFunction& x) { return GradedMatrix::unit(W, 1, 1, x); }

}  // namespace

TEST(Generators, ParityAndNames) {
  EXPECT_EQ((ModeGenerator{1, 2, 0}).parity(), Parity::odd);
  EXPECT_EQ((ModeGenerator{2, 2, -1}).parity(), Parity::even);
  EXPECT_EQ((ModeGenerator{2, 1, -3}).to_string(), "l21^-3");
  EXPECT_FALSE((ModeGenerator{1, 1, -1}).plus());
}

TEST(FreeElement, Arithmetic) {
  const FreeElement a = FreeElement::generator({1, 1, 0});
  const FreeElement b = FreeElement::generator({1, 1, 1});
  const FreeElement ab = a * b;
  EXPECT_EQ(ab.degree(), 2u);
  EXPECT_EQ(ab - ab, FreeElement());
  EXPECT_EQ(supercommutator({1, 1, 0}, {1, 1, 1}), a * b - b * a);
  EXPECT_EQ(supercommutator({1, 2, 0}, {2, 1, 0}),
            FreeElement::generator({1, 2, 0}) * FreeElement::generator({2, 1, 0}) +
                FreeElement::generator({2, 1, 0}) * FreeElement::generator({1, 2, 0}));
  EXPECT_EQ((h * a).coefficient({{1, 1, 0}}), h);
  EXPECT_TRUE((a + FreeElement::generator({1, 2, 0})).generators().size() == 2);
  EXPECT_FALSE((a + FreeElement::generator({1, 2, 0})).parity_homogeneous());
}

TEST(FreeElement, WordOrderIsLengthFirst) {
  WordOrder lt;
  EXPECT_TRUE(lt({{2, 2, 5}}, {{1, 1, 0}, {1, 1, 0}}));
  EXPECT_TRUE(lt({{1, 1, 0}, {2, 2, 0}}, {{1, 2, 0}, {1, 1, 0}}));
}

TEST(Extraction, Counts) {
  EXPECT_EQ(plus_plus().size(), 182u);
  EXPECT_EQ(relation_elements(plus_plus()).size(), 120u);
  EXPECT_EQ(extract_mode_relations(Family::minus_minus, 2).size(), 144u);
  EXPECT_EQ(extract_mode_relations(Family::plus_minus, 2).size(), 168u);
}

TEST(Extraction, LowestCommutator) {
  for (const auto& r : plus_plus()) {
    if (r.row != 0 || r.col != 0 || r.u_exp != -1 || r.v_exp != -1) continue;
    EXPECT_EQ(r.element, RationalFunction(-2) * h * h * supercommutator({1, 1, 0}, {1, 1, 1}));
    return;
  }
  FAIL() << "relation not found";
}

TEST(Extraction, ParityHomogeneous) {
  for (Family f : {Family::plus_plus, Family::minus_minus, Family::plus_minus})
    for (const auto& r : extract_mode_relations(f, 2))
      EXPECT_TRUE(r.element.parity_homogeneous()) << r.label();
}

TEST(Extraction, ModeRanges) {
  for (const auto& e : relation_elements(extract_mode_relations(Family::minus_minus, 2)))
    for (const auto& g : e.generators()) {
      EXPECT_GE(g.k, -3);
      EXPECT_LE(g.k, -1);
    }
}

TEST(Extraction, CentralChargeCoherence) {
  const auto shifted = extract_mode_relations(Family::plus_minus, 2, true);
  const auto plain = extract_mode_relations(Family::plus_minus, 2, false);
  ASSERT_EQ(shifted.size(), plain.size());
  for (std::size_t i = 0; i < shifted.size(); ++i)
    EXPECT_EQ(shifted[i].element.substitute(Var::c, RationalFunction()), plain[i].element) << shifted[i].label();
}

TEST(RepModes, EvaluationModes) {
  RepModes m(build_eval_L(Var::w));
  EXPECT_EQ(m.mode({1, 1, 0}), e22(1));
  EXPECT_EQ(m.mode({1, 1, 1}), e22(w - h));
  EXPECT_EQ(m.mode({1, 2, 0}), GradedMatrix::unit(W, 1, 0, -1));
  EXPECT_EQ(m.mode({2, 1, 0}), GradedMatrix::unit(W, 0, 1, -1));
  EXPECT_EQ(m.mode({1, 1, -1}), e22((w - h).inverse()));
}

TEST(RepModes, Soundness) {
  for (Family f : {Family::plus_plus, Family::minus_minus, Family::plus_minus}) {
    const CheckReport r = check_relations_in_rep(f, 2);
    EXPECT_TRUE(r.passed()) << to_string(f) << (r.witness ? r.witness->location : "");
  }
}

TEST(RepModes, TrivialRepresentation) {
  EXPECT_TRUE(check_relations_in_rep(Family::plus_plus, 2, trivial_L()).passed());
}

TEST(RepModes, CorruptedCoefficientDetected) {
  RepModes modes(build_eval_L(Var::w));
  bool detected = false;
  for (const auto& e : relation_elements(plus_plus())) {
    const auto& [word, coef] = *e.terms().begin();
    FreeElement bad = e;
    bad.set(word, RationalFunction(2) * coef);
    if (!specialize_to_rep(bad, modes).is_zero()) {
      detected = true;
      break;
    }
  }
  EXPECT_TRUE(detected);
}

TEST(Ideal, StandardCandidatesAreMembers) {
  const std::vector<FreeElement> rels = relation_elements(plus_plus());
  const auto cands = standard_candidates(2);
  EXPECT_EQ(cands.size(), 5u);
  for (const auto& [name, cand] : cands) {
    const MembershipResult m = ideal_membership(cand, rels, 2);
    EXPECT_TRUE(m.member) << name;
    EXPECT_TRUE(m.report.passed()) << name;
    EXPECT_FALSE(m.certificate.empty());
    EXPECT_EQ(expand_certificate(m.certificate, rels), cand) << name;
  }
}

TEST(Ideal, NonMemberResidual) {
  const std::vector<FreeElement> rels = relation_elements(plus_plus());
  const MembershipResult m = ideal_membership(FreeElement::generator({1, 1, 0}), rels, 2);
  EXPECT_FALSE(m.member);
  EXPECT_EQ(m.report.verdict, Verdict::fail);
  EXPECT_FALSE(m.residual.is_zero());
  EXPECT_TRUE(m.certificate.empty());
}

TEST(Ideal, CandidatesVanishInRepresentation) {
  RepModes modes(build_eval_L(Var::w));
  for (const auto& [name, cand] : standard_candidates(2)) EXPECT_TRUE(specialize_to_rep(cand, modes).is_zero()) << name;
}

TEST(Ideal, Guards) {
  const std::vector<FreeElement> rels = relation_elements(plus_plus());
  const FreeElement c = standard_candidates(2).front().second;
  EXPECT_THROW(ideal_membership(c, rels, 2, 10), BasisCapExceeded);
  EXPECT_THROW(ideal_membership(c, rels, 1), Error);
  EXPECT_THROW(ideal_membership(c * c, rels, 2), Error);
}

TEST(Parse, Forms) {
  EXPECT_EQ(parse_free_element("[l11^0, l11^1]"), supercommutator({1, 1, 0}, {1, 1, 1}));
  EXPECT_EQ(parse_free_element("{l12^0, l21^0}"), supercommutator({1, 2, 0}, {2, 1, 0}));
  EXPECT_EQ(parse_free_element("2*hbar*l12^0*l12^0 - l11^-1"),
            RationalFunction(2) * h * FreeElement::word({{1, 2, 0}, {1, 2, 0}}) - FreeElement::generator({1, 1, -1}));
  EXPECT_EQ(parse_free_element("1/2*l22^3"), RationalFunction(Rational(1, 2)) * FreeElement::generator({2, 2, 3}));
}

TEST(Parse, Errors) {
  for (const char* bad : {"", "l13^0", "l11", "[l11^0 l11^1]", "l11^0 +", "3*", "x*l11^0", "{l11^0, l11^1"})
    EXPECT_THROW(parse_free_element(bad), ParseError) << bad;
}
