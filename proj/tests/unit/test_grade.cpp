#include <gtest/gtest.h>

#include "sydy/grade.hpp"

using namespace sydy;

namespace {

const GradedSpace V = GradedSpace::gl11();
const GradedSpace VV = tensor(V, V);

GradedMatrix unit(std::size_t i, std::size_t j) { return GradedMatrix::unit(V, i, j); }

int parity_bit(std::size_t i) { return static_cast<int>(i); }

}  // namespace

TEST(GradedKron, IdentityTensorIdentity) {
  EXPECT_EQ(graded_kron(GradedMatrix::identity(V), GradedMatrix::identity(V)), GradedMatrix::identity(VV));
}

TEST(GradedKron, OddUnitsPickUpASign) {
  const GradedMatrix m = graded_kron(unit(0, 1), unit(1, 0));
  EXPECT_EQ(m.nnz(), 1u);
  EXPECT_EQ(m.at(0 * 2 + 1, 1 * 2 + 0), RationalFunction(-1));
}

// (A⊗B)(C⊗D) = (-1)^{p(B)p(C)} AC⊗BD on homogeneous matrix units.
TEST(GradedKron, MultiplicationLawOnAllMatrixUnits) {
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d) {
          const GradedMatrix A = unit(a / 2, a % 2), B = unit(b / 2, b % 2);
          const GradedMatrix C = unit(c / 2, c % 2), D = unit(d / 2, d % 2);
          const int pb = bit(*B.parity());
          const int pc = bit(*C.parity());
          const GradedMatrix lhs = graded_kron(A, B) * graded_kron(C, D);
          const GradedMatrix rhs = RationalFunction(sign_of(pb * pc)) * graded_kron(A * C, B * D);
          ASSERT_EQ(lhs, rhs);
        }
}

TEST(SuperPermutation, ActionOnBasis) {
  const GradedMatrix p = super_permutation(V);
  // P e1⊗e2 = e2⊗e1, P e2⊗e2 = -e2⊗e2
  EXPECT_EQ(p.at(1 * 2 + 0, 0 * 2 + 1), RationalFunction(1));
  EXPECT_EQ(p.at(3, 3), RationalFunction(-1));
  EXPECT_EQ(p * p, GradedMatrix::identity(VV));
}

TEST(SuperPermutation, EntriesFromTheDefinition) {
  const GradedMatrix p = super_permutation(V);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) {
          const int expected = (i == l && k == j) ? sign_of(parity_bit(i) * parity_bit(k)) : 0;
          EXPECT_EQ(p.at(i * 2 + k, j * 2 + l), RationalFunction(expected));
        }
}

TEST(EtaTwist, Entries) {
  const GradedMatrix eta = eta_twist(V);
  EXPECT_EQ(eta.at(3, 3), RationalFunction(-1));
  EXPECT_EQ(eta.at(1, 1), RationalFunction(1));
  EXPECT_EQ(eta.nnz(), 4u);
  EXPECT_EQ(eta * eta, GradedMatrix::identity(VV));
}

TEST(SuperTranspose, DiagonalUntouched) {
  GradedMatrix d(V);
  d.set(0, 0, rf(Var::u));
  d.set(1, 1, rf(Var::w));
  EXPECT_EQ(super_transpose(d), d);
}

TEST(SuperTranspose, OffDiagonalSign) {
  const GradedMatrix m = GradedMatrix::unit(V, 0, 1, rf(Var::u));
  const GradedMatrix t = super_transpose(m);
  EXPECT_EQ(t.nnz(), 1u);
  EXPECT_EQ(t.at(1, 0), -rf(Var::u));
}

TEST(Parity, MatrixUnits) {
  EXPECT_EQ(unit(0, 0).parity(), Parity::even);
  EXPECT_EQ(unit(0, 1).parity(), Parity::odd);
  EXPECT_EQ((unit(0, 0) + unit(0, 1)).parity(), std::nullopt);
  EXPECT_EQ((unit(0, 1) * unit(1, 0)).parity(), Parity::even);
}

TEST(Inverse, ExactOverTheFunctionField) {
  GradedMatrix m(V);
  m.set(0, 0, rf(Var::u));
  m.set(0, 1, rf(Var::hbar));
  m.set(1, 1, rf(Var::u) - rf(Var::w));
  EXPECT_EQ(m * inverse(m), GradedMatrix::identity(V));
  EXPECT_THROW(inverse(GradedMatrix(V)), SingularMatrix);
}
