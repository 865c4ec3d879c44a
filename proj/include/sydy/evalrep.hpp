#pragma once

#include <array>
#include <optional>
#include <string>

#include "sydy/rmatrix.hpp"

namespace sydy {

enum class Sign { plus, minus };

class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// 2×2 auxiliary matrix of quantum-space operators depending on one spectral variable.
struct LOperator {
  GradedSpace quantum = GradedSpace::gl11();
  std::array<GradedMatrix, 4> entries;
  Var spectral = Var::u;
  Sign sign = Sign::plus;
  std::optional<Var> point;

  const GradedMatrix& l(std::size_t i, std::size_t j) const { return entries[i * 2 + j]; }
  GradedMatrix& l(std::size_t i, std::size_t j) { return entries[i * 2 + j]; }

  LOperator at(const RationalFunction& arg) const {
    LOperator r = *this;
    for (auto& e : r.entries) e = e.substitute(spectral, arg);
    return r;
  }

  /// The operator as one matrix on V⊗W, auxiliary index first.
  GradedMatrix block() const {
    const std::size_t n = quantum.dim();
    GradedMatrix m(tensor(GradedSpace::gl11(), quantum));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (const auto& [ab, x] : l(i, j).entries()) m.set(i * n + ab.first, j * n + ab.second, x);
    return m;
  }

  static LOperator from_block(const GradedMatrix& m, const GradedSpace& quantum) {
    LOperator r;
    r.quantum = quantum;
    const std::size_t n = quantum.dim();
    for (auto& e : r.entries) e = GradedMatrix(quantum);
    for (const auto& [ij, x] : m.entries()) r.l(ij.first / n, ij.second / n).set(ij.first % n, ij.second % n, x);
    return r;
  }

  friend bool operator==(const LOperator& a, const LOperator& b) { return a.entries == b.entries; }
};

/// Ordinary product of auxiliary matrices with operator entries.
inline LOperator operator*(const LOperator& a, const LOperator& b) {
  LOperator r = a;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r.l(i, j) = a.l(i, 0) * b.l(0, j) + a.l(i, 1) * b.l(1, j);
  return r;
}

/// l_ij(u) read off the blocks of R(u - w); the auxiliary index is the first tensor factor.
inline LOperator build_eval_L(Var w, Sign sign = Sign::plus) {
  LOperator l = LOperator::from_block(r_matrix_at(rf(Var::u) - rf(w)), GradedSpace::gl11());
  l.sign = sign;
  l.point = w;
  return l;
}

/// Same read-off with the auxiliary index taken from the second tensor factor.
inline LOperator build_eval_L_aux_second(Var w) {
  const GradedMatrix r = r_matrix_at(rf(Var::u) - rf(w));
  LOperator l;
  l.point = w;
  for (auto& e : l.entries) e = GradedMatrix(l.quantum);
  for (const auto& [rc, x] : r.entries()) l.l(rc.first % 2, rc.second % 2).set(rc.first / 2, rc.second / 2, x);
  return l;
}

/// The trivial representation L = I on an even one-dimensional space.
inline LOperator trivial_L() {
  LOperator l;
  l.quantum = GradedSpace::trivial();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) l.l(i, j) = i == j ? GradedMatrix::identity(l.quantum) : GradedMatrix(l.quantum);
  return l;
}

namespace detail {

/// L1 on V⊗V⊗W: (L1)_{(i k a),(j l b)} = δ_kl (l_ij)_ab.
inline GradedMatrix embed_first(const LOperator& l) {
  const std::size_t n = l.quantum.dim();
  const GradedSpace vv = tensor(GradedSpace::gl11(), GradedSpace::gl11());
  GradedMatrix m(tensor(vv, l.quantum));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (const auto& [ab, x] : l.l(i, j).entries())
        for (std::size_t k = 0; k < 2; ++k) m.set((i * 2 + k) * n + ab.first, (j * 2 + k) * n + ab.second, x);
  return m;
}

/// L2 on V⊗V⊗W: (L2)_{(i k a),(j l b)} = δ_ij (l_kl)_ab.
inline GradedMatrix embed_second(const LOperator& l) {
  const std::size_t n = l.quantum.dim();
  const GradedSpace vv = tensor(GradedSpace::gl11(), GradedSpace::gl11());
  GradedMatrix m(tensor(vv, l.quantum));
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t l2 = 0; l2 < 2; ++l2)
      for (const auto& [ab, x] : l.l(k, l2).entries())
        for (std::size_t i = 0; i < 2; ++i) m.set((i * 2 + k) * n + ab.first, (i * 2 + l2) * n + ab.second, x);
  return m;
}

inline std::string aux_quantum_label(std::size_t idx, std::size_t n) {
  return tensor_label(idx / n, 2) + ":" + std::to_string(idx % n + 1);
}

}  // namespace detail

/// Least common multiple of the denominators of all entries.
inline Polynomial common_denominator(const LOperator& l) {
  Polynomial den(1);
  for (const auto& e : l.entries)
    for (const auto& [ij, x] : e.entries()) {
      const Polynomial& d = x.denominator();
      if (Polynomial::divide_exact(den, d)) continue;
      den = *Polynomial::divide_exact(den * d, gcd(den, d));
    }
  return den.monic();
}

/// R(u-v) L1(u) η L2(v) η = η L2(v) η L1(u) R(u-v) on V⊗V⊗W.
/// Both sides are linear in L(u), in L(v) and in R, so scalar denominators are cleared first.
inline CheckReport check_rll(const LOperator& l_in, const std::string& id = "rll-eval") {
  Stopwatch clock;
  CheckReport rep{.id = id};
  const RationalFunction u = rf(Var::u);
  const RationalFunction v = rf(Var::v);
  LOperator l = l_in;
  const RationalFunction den(common_denominator(l));
  for (auto& e : l.entries) e = den * e;
  const GradedSpace& q = l.quantum;
  const GradedMatrix idw = GradedMatrix::identity(q);
  const GradedMatrix r = kron(r_matrix_at(u - v).transformed([&](const RationalFunction& x) {
    return x * (u - v + rf(Var::hbar));
  }), idw);
  const GradedMatrix eta = kron(eta_twist(GradedSpace::gl11()), idw);
  const GradedMatrix l1 = detail::embed_first(l.at(u));
  const GradedMatrix l2 = eta * detail::embed_second(l.at(v)) * eta;
  const GradedMatrix lhs = r * l1 * l2;
  const GradedMatrix rhs = l2 * l1 * r;
  const std::size_t n = q.dim();
  if (auto wit = first_difference(lhs, rhs, [n](std::size_t i, std::size_t j) {
        return "(" + detail::aux_quantum_label(i, n) + "),(" + detail::aux_quantum_label(j, n) + ")";
      }))
    rep.fail(*wit);
  rep.millis = clock.millis();
  return rep;
}

/// Gauss coordinates k1, k2, e, f and, once transformed, K, H, E, F (rational shadows).
struct CurrentSet {
  GradedSpace quantum;
  Var spectral = Var::u;
  GradedMatrix k1, k2, e, f;
  bool transformed = false;
  GradedMatrix K, H, E, F;

  /// The named current with the spectral variable replaced by `arg`.
  GradedMatrix at(const GradedMatrix& current, const RationalFunction& arg) const {
    return current.substitute(spectral, arg);
  }
};

inline GradedMatrix invert_operator(const GradedMatrix& m, const char* what) {
  try {
    return inverse(m);
  } catch (const SingularMatrix&) {
    throw DegenerateInput(std::string(what) + " is not invertible");
  }
}

inline CurrentSet gauss_decompose(const LOperator& l) {
  CurrentSet c;
  c.quantum = l.quantum;
  c.spectral = l.spectral;
  c.k1 = l.l(0, 0);
  const GradedMatrix k1inv = invert_operator(c.k1, "k1");
  c.e = k1inv * l.l(0, 1);
  c.f = l.l(1, 0) * k1inv;
  c.k2 = l.l(1, 1) - c.f * c.k1 * c.e;
  return c;
}

/// Lower-unipotent · diag(k1, k2) · upper-unipotent.
inline LOperator recompose(const CurrentSet& c) {
  LOperator l;
  l.quantum = c.quantum;
  l.spectral = c.spectral;
  l.l(0, 0) = c.k1;
  l.l(0, 1) = c.k1 * c.e;
  l.l(1, 0) = c.f * c.k1;
  l.l(1, 1) = c.k2 + c.f * c.k1 * c.e;
  return l;
}

inline LOperator identity_L(const LOperator& like) {
  LOperator l = like;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) l.l(i, j) = i == j ? GradedMatrix::identity(like.quantum) : GradedMatrix(like.quantum);
  return l;
}

/// Inverse assembled from the currents.
inline LOperator invert_L(const LOperator& l, const CurrentSet& c) {
  const GradedMatrix k1inv = invert_operator(c.k1, "k1");
  const GradedMatrix k2inv = invert_operator(c.k2, "k2");
  LOperator r = l;
  r.l(0, 0) = k1inv + c.e * k2inv * c.f;
  r.l(0, 1) = -(c.e * k2inv);
  r.l(1, 0) = -(k2inv * c.f);
  r.l(1, 1) = k2inv;
  return r;
}

/// K(u) = k1(u+ħ/2)^{-1} k2(u+ħ/2), H(u) = k1(u-ħ/2) k2(u+ħ/2), E(u) = e(u+ħ/2), F(u) = f(u+ħ/2).
inline CurrentSet transform_currents(CurrentSet c) {
  const RationalFunction u = rf(c.spectral);
  const RationalFunction half = RationalFunction(Rational(1, 2)) * rf(Var::hbar);
  const GradedMatrix k1p = c.at(c.k1, u + half);
  const GradedMatrix k2p = c.at(c.k2, u + half);
  c.K = invert_operator(k1p, "k1") * k2p;
  c.H = c.at(c.k1, u - half) * k2p;
  c.E = c.at(c.e, u + half);
  c.F = c.at(c.f, u + half);
  c.transformed = true;
  return c;
}

/// (st L)_ij = (-1)^{i+j} l_ji.
inline LOperator super_transpose(const LOperator& l) {
  LOperator r = l;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) r.l(i, j) = sign_of(static_cast<int>(i + j)) * l.l(j, i);
  return r;
}

}  // namespace sydy
