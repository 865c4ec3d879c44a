#pragma once

#include <string>

#include "sydy/check_report.hpp"

namespace sydy {

/// R-matrix on V⊗V as a function of one spectral indeterminate.
struct RMatrix {
  Var var = Var::u;
  GradedMatrix matrix;

  /// The matrix with the spectral variable replaced by `arg`.
  GradedMatrix at(const RationalFunction& arg) const { return matrix.substitute(var, arg); }
};

/// R(x) = (x I + ħ P) / (x + ħ) for an arbitrary argument x.
inline GradedMatrix r_matrix_at(const RationalFunction& x) {
  const GradedSpace v = GradedSpace::gl11();
  const RationalFunction scale = (x + rf(Var::hbar)).inverse();
  return scale * (GradedMatrix::scalar(tensor(v, v), x) + rf(Var::hbar) * super_permutation(v));
}

inline RMatrix build_r(Var var) { return {var, r_matrix_at(rf(var))}; }

namespace detail {

inline std::string pair_label(std::size_t i, std::size_t j, std::size_t legs) {
  return "(" + tensor_label(i, legs) + "),(" + tensor_label(j, legs) + ")";
}

}  // namespace detail

inline CheckReport check_sybe(const RMatrix& r) {
  Stopwatch clock;
  CheckReport rep{.id = "ybe"};
  const GradedSpace v = GradedSpace::gl11();
  const RationalFunction u = rf(Var::u);
  const RationalFunction w = rf(Var::v);
  const GradedMatrix eta = eta_twist(v);
  const GradedMatrix e12 = embed_legs(eta, v, 0, 1);
  const GradedMatrix e13 = embed_legs(eta, v, 0, 2);
  const GradedMatrix e23 = embed_legs(eta, v, 1, 2);
  const GradedMatrix r12 = embed_legs(r.at(u), v, 0, 1);
  const GradedMatrix r13 = embed_legs(r.at(u + w), v, 0, 2);
  const GradedMatrix r23 = embed_legs(r.at(w), v, 1, 2);
  const GradedMatrix lhs = e12 * r12 * e13 * r13 * e23 * r23;
  const GradedMatrix rhs = e23 * r23 * e13 * r13 * e12 * r12;
  if (auto wit = first_difference(lhs, rhs, [](std::size_t i, std::size_t j) { return detail::pair_label(i, j, 3); }))
    rep.fail(*wit);
  rep.millis = clock.millis();
  return rep;
}

inline CheckReport check_unitarity(const RMatrix& r) {
  Stopwatch clock;
  CheckReport rep{.id = "unitarity"};
  const GradedSpace v = GradedSpace::gl11();
  const GradedMatrix p = super_permutation(v);
  const RationalFunction u = rf(Var::u);
  const GradedMatrix r21 = p * r.at(-u) * p;
  const GradedMatrix prod = r.at(u) * r21;
  if (auto wit = first_difference(prod, GradedMatrix::identity(tensor(v, v)),
                                  [](std::size_t i, std::size_t j) { return detail::pair_label(i, j, 2); }))
    rep.fail(*wit);
  rep.millis = clock.millis();
  return rep;
}

/// R_{ij,kl} may be nonzero only when i + j = k + l.
inline CheckReport check_weight_conservation(const GradedMatrix& m) {
  Stopwatch clock;
  CheckReport rep{.id = "weight"};
  const std::size_t n = 2;
  for (const auto& [rc, x] : m.entries()) {
    const std::size_t i = rc.first / n;
    const std::size_t j = rc.first % n;
    const std::size_t k = rc.second / n;
    const std::size_t l = rc.second % n;
    if (i + j != k + l) {
      rep.fail({detail::pair_label(rc.first, rc.second, 2), x.to_string(), "0"});
      break;
    }
  }
  rep.millis = clock.millis();
  return rep;
}

inline CheckReport check_weight_conservation(const RMatrix& r) { return check_weight_conservation(r.matrix); }

}  // namespace sydy
