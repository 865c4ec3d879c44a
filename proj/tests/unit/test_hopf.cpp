#include <map>

#include <gtest/gtest.h>

#include "sydy/hopf.hpp"

using namespace sydy;

namespace {

std::map<std::string, CheckReport> by_id(const std::vector<CheckReport>& v) {
  std::map<std::string, CheckReport> m;
  for (const auto& r : v) m.emplace(r.id, r);
  return m;
}

const std::map<std::string, CheckReport>& suite() {
  static const auto m = by_id(run_hopf_suite(6));
  return m;
}

// Two-site L with every sign dropped.
LOperator unsigned_two_site(const LOperator& a, const LOperator& b) {
  LOperator r = two_site_L(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      GradedMatrix acc(r.quantum);
      for (std::size_t k = 0; k < 2; ++k) acc += graded_kron(a.l(k, j), b.l(i, k));
      r.l(i, j) = acc;
    }
  return r;
}

}  // namespace

TEST(Coproduct, TwoSiteRll) { EXPECT_TRUE(suite().at("hopf.coproduct.rll").passed()); }

TEST(Coproduct, SignsMatter) {
  const LOperator l = unsigned_two_site(build_eval_L(Var::w1), build_eval_L(Var::w2));
  EXPECT_EQ(check_rll(l).verdict, Verdict::fail);
}

TEST(Coproduct, QuantumSpaceIsFourDimensional) {
  const LOperator l = two_site_L(build_eval_L(Var::w1), build_eval_L(Var::w2));
  EXPECT_EQ(l.quantum.dim(), 4u);
  EXPECT_EQ(l.l(0, 1).parity(), Parity::odd);
  EXPECT_EQ(l.l(1, 1).parity(), Parity::even);
}

TEST(Counit, BothSlots) {
  EXPECT_TRUE(suite().at("hopf.counit.left").passed());
  EXPECT_TRUE(suite().at("hopf.counit.right").passed());
  EXPECT_TRUE(suite().at("hopf.counit.currents").passed());
}

TEST(Currents, DeltaK) { EXPECT_TRUE(suite().at("hopf.delta-K").passed()); }

TEST(Currents, PrintedEAndFFail) {
  for (const char* id : {"hopf.delta-E", "hopf.delta-F"}) {
    const CheckReport& r = suite().at(id);
    EXPECT_EQ(r.verdict, Verdict::fail) << id;
    ASSERT_TRUE(r.witness);
    EXPECT_NE(r.witness->lhs, r.witness->rhs);
  }
}

TEST(Currents, KFormsPass) {
  EXPECT_TRUE(suite().at("hopf.delta-E.corrected").passed());
  EXPECT_TRUE(suite().at("hopf.delta-F.corrected").passed());
}

TEST(Currents, DeltaHReading) { EXPECT_TRUE(suite().at("hopf.delta-H").passed()); }

TEST(Currents, CompareCurrentDetectsModeDifference) {
  const GradedSpace W = GradedSpace::gl11();
  const RationalFunction u = rf(Var::u);
  const RationalFunction w = rf(Var::w);
  const GradedMatrix a = GradedMatrix::scalar(W, (u - w).inverse());
  const GradedMatrix b = GradedMatrix::scalar(W, (u - w - rf(Var::hbar)).inverse());
  EXPECT_TRUE(detail::compare_current("same", a, a, 4).passed());
  const CheckReport r = detail::compare_current("diff", a, b, 4);
  EXPECT_EQ(r.verdict, Verdict::fail);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(r.witness->location.starts_with("rational"));
}

TEST(Antipode, Evaluation) {
  const LOperator l = build_eval_L(Var::w);
  const AntipodeImage img = check_antipode_matrix(l);
  EXPECT_TRUE(img.report.passed());
  const GradedMatrix st = super_transpose(l).block();
  EXPECT_EQ(st * img.image.block(), GradedMatrix::identity(st.rows()));
}

TEST(Antipode, Trivial) { EXPECT_TRUE(suite().at("hopf.antipode.trivial").passed()); }

TEST(Antipode, SuperTransposeSigns) {
  const LOperator l = build_eval_L(Var::w);
  const LOperator st = super_transpose(l);
  EXPECT_EQ(st.l(0, 1), -l.l(1, 0));
  EXPECT_EQ(st.l(1, 0), -l.l(0, 1));
  EXPECT_EQ(st.l(1, 1), l.l(1, 1));
}

TEST(Antipode, SingularReported) {
  LOperator l = trivial_L();
  l.l(0, 0) = GradedMatrix(l.quantum);
  l.l(1, 1) = GradedMatrix(l.quantum);
  EXPECT_EQ(check_antipode_matrix(l).report.verdict, Verdict::fail);
}

TEST(Suite, SortedAndComplete) {
  const auto v = run_hopf_suite(4);
  EXPECT_EQ(v.size(), 12u);
  EXPECT_TRUE(std::is_sorted(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; }));
}
