#pragma once

#include <string>
#include <vector>

#include "sydy/relcheck.hpp"

namespace sydy {

/// Δ(l_ij)(u) = Σ_k (-1)^{(k+i)(k+j)} l_kj(u) ⊗ l_ik(u), first factor from `a`, second from `b`.
inline LOperator two_site_L(const LOperator& a, const LOperator& b) {
  LOperator r;
  r.quantum = tensor(a.quantum, b.quantum);
  r.spectral = a.spectral;
  r.sign = a.sign;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      GradedMatrix acc(r.quantum);
      for (std::size_t k = 0; k < 2; ++k)
        acc += sign_of(static_cast<int>((k + i) * (k + j))) * graded_kron(a.l(k, j), b.l(i, k));
      r.l(i, j) = acc;
    }
  return r;
}

namespace detail {

inline std::string l_label(std::size_t i, std::size_t j) {
  return "l" + std::to_string(i + 1) + std::to_string(j + 1);
}

/// Entrywise comparison of operator-valued L's, ignoring the labels of their quantum spaces.
inline std::optional<Witness> compare_L(const LOperator& x, const LOperator& y) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (x.l(i, j).entries() != y.l(i, j).entries())
        return Witness{l_label(i, j), x.l(i, j).to_string(), y.l(i, j).to_string()};
  return std::nullopt;
}

/// Exact comparison, then mode by mode in both expansion regions of u.
inline CheckReport compare_current(const std::string& id, const GradedMatrix& lhs, const GradedMatrix& rhs, long n,
                                   std::string note = {}) {
  Stopwatch clock;
  CheckReport rep{.id = id, .window = static_cast<int>(n), .note = std::move(note)};
  if (auto w = first_difference(lhs, rhs, entry_label)) {
    w->location = "rational " + w->location;
    rep.fail(*w);
  }
  // num_a / base_a^i = num_b / base_b^j  ⇔  num_a · base_b^j = num_b · base_a^i
  auto same = [](const FracSeries& x, const FracSeries& y, long m) {
    const auto& xc = x.series.coeffs();
    const auto& yc = y.series.coeffs();
    auto xi = xc.find(m);
    auto yi = yc.find(m);
    if (xi == xc.end() || yi == yc.end()) return xi == xc.end() && yi == yc.end();
    return xi->second.num * y.base.pow(yi->second.power) == yi->second.num * x.base.pow(xi->second.power);
  };
  for (Region r : {Region::infinity, Region::zero}) {
    if (rep.witness) break;
    const std::size_t rows = lhs.rows().dim();
    const std::size_t cols = lhs.cols().dim();
    bool any = false;
    for (std::size_t i = 0; i < rows && !rep.witness; ++i)
      for (std::size_t j = 0; j < cols && !rep.witness; ++j) {
        const FracSeries ls = frac_expand(lhs.at(i, j), Var::u, r, n);
        const FracSeries rs = frac_expand(rhs.at(i, j), Var::u, r, n);
        for (long m = -n; m <= n; ++m) {
          if (!ls.series.exact_at(m) || !rs.series.exact_at(m)) continue;
          any = true;
          if (!same(ls, rs, m)) {
            const std::string where = std::string(r == Region::infinity ? "+" : "-") + " mode " + std::to_string(m) + " " +
                                      entry_label(i, j);
            const OperatorSeries lx = expand(lhs, Var::u, r, n);
            const OperatorSeries rx = expand(rhs, Var::u, r, n);
            rep.fail({where, lx[m].at(i, j).to_string(), rx[m].at(i, j).to_string()});
            break;
          }
        }
      }
    if (!any && rep.passed()) rep.verdict = Verdict::window_exhausted;
  }
  rep.millis = clock.millis();
  return rep;
}

}  // namespace detail

/// The two-site L built from evaluation representations at w1 and w2 satisfies RLL.
inline CheckReport check_coproduct_homomorphism(Var w1 = Var::w1, Var w2 = Var::w2) {
  return check_rll(two_site_L(build_eval_L(w1), build_eval_L(w2)), "hopf.coproduct.rll");
}

/// (ε⊗id)Δ = id and (id⊗ε)Δ = id on all L entries, ε realized by the trivial representation.
inline std::vector<CheckReport> check_counit(Var w = Var::w) {
  const LOperator l = build_eval_L(w);
  std::vector<CheckReport> out;
  for (int slot = 0; slot < 2; ++slot) {
    Stopwatch clock;
    CheckReport rep{.id = slot == 0 ? "hopf.counit.left" : "hopf.counit.right"};
    const LOperator d = slot == 0 ? two_site_L(trivial_L(), l) : two_site_L(l, trivial_L());
    if (auto wit = detail::compare_L(d, l)) rep.fail(*wit);
    rep.millis = clock.millis();
    out.push_back(std::move(rep));
  }
  return out;
}

/// Currents of the two-site L against the printed coproduct formulas, plus sign-corrected forms.
inline std::vector<CheckReport> check_current_coproducts(Var w1 = Var::w1, Var w2 = Var::w2, long n = 6) {
  const CurrentSet a = transform_currents(gauss_decompose(build_eval_L(w1)));
  const CurrentSet b = transform_currents(gauss_decompose(build_eval_L(w2)));
  const CurrentSet d = transform_currents(gauss_decompose(two_site_L(build_eval_L(w1), build_eval_L(w2))));
  const GradedMatrix one_a = GradedMatrix::identity(a.quantum);
  const GradedMatrix one_b = GradedMatrix::identity(b.quantum);
  const RationalFunction u_minus_h = rf(Var::u) - rf(Var::hbar);
  auto x = [](const GradedMatrix& p, const GradedMatrix& q) { return graded_kron(p, q); };

  std::vector<CheckReport> out;
  {
    Stopwatch clock;
    CheckReport rep{.id = "hopf.delta-K"};
    if (auto w = first_difference(d.K, x(a.K, b.K), detail::entry_label)) rep.fail(*w);
    rep.millis = clock.millis();
    out.push_back(std::move(rep));
  }
  out.push_back(detail::compare_current("hopf.delta-E", d.E, x(a.E, one_b) + x(a.H, b.E), n, "as printed: E⊗1 + H⊗E"));
  out.push_back(detail::compare_current("hopf.delta-E.corrected", d.E, x(a.E, one_b) + x(a.K, b.E), n, "E⊗1 + K⊗E"));
  out.push_back(detail::compare_current("hopf.delta-F", d.F, x(one_a, b.F) + x(a.F, b.H), n, "as printed: 1⊗F + F⊗H"));
  out.push_back(detail::compare_current("hopf.delta-F.corrected", d.F, x(one_a, b.F) + x(a.F, b.K), n, "1⊗F + F⊗K"));
  const GradedMatrix correction =
      x(a.at(a.F, u_minus_h) * a.H, b.H * b.at(b.E, u_minus_h)).transformed([](const RationalFunction& v) {
        return RationalFunction(2) * v;
      });
  out.push_back(detail::compare_current("hopf.delta-H", d.H, x(a.H, b.H) - correction, n,
                                        "reading of a garbled display: H⊗H - 2F(u-h)H(u)⊗H(u)E(u-h)"));
  // counit on currents: ε(K) = ε(H) = 1, ε(E) = ε(F) = 0
  {
    Stopwatch clock;
    CheckReport rep{.id = "hopf.counit.currents"};
    const CurrentSet t = transform_currents(gauss_decompose(trivial_L()));
    const GradedMatrix one = GradedMatrix::identity(t.quantum);
    const std::pair<const char*, std::pair<GradedMatrix, GradedMatrix>> cases[] = {
        {"K", {t.K, one}}, {"H", {t.H, one}}, {"E", {t.E, GradedMatrix(t.quantum)}}, {"F", {t.F, GradedMatrix(t.quantum)}}};
    for (const auto& [name, pair] : cases) {
      if (rep.witness) break;
      if (auto w = first_difference(pair.first, pair.second, [&](std::size_t, std::size_t) { return std::string(name); }))
        rep.fail(*w);
    }
    const CurrentSet left = transform_currents(gauss_decompose(two_site_L(trivial_L(), build_eval_L(w2))));
    const std::pair<const char*, std::pair<const GradedMatrix*, const GradedMatrix*>> slots[] = {
        {"(ε⊗id)Δ(K)", {&left.K, &b.K}}, {"(ε⊗id)Δ(H)", {&left.H, &b.H}},
        {"(ε⊗id)Δ(E)", {&left.E, &b.E}}, {"(ε⊗id)Δ(F)", {&left.F, &b.F}}};
    for (const auto& [name, pair] : slots) {
      if (rep.witness) break;
      if (pair.first->entries() != pair.second->entries())
        rep.fail({name, pair.first->to_string(), pair.second->to_string()});
    }
    rep.millis = clock.millis();
    out.push_back(std::move(rep));
  }
  return out;
}

/// S(st L) = (st L)^{-1}: the inverse exists and is two-sided.
struct AntipodeImage {
  CheckReport report;
  LOperator image;
};

inline AntipodeImage check_antipode_matrix(const LOperator& l, const std::string& id = "hopf.antipode") {
  Stopwatch clock;
  AntipodeImage out{CheckReport{.id = id}, l};
  const LOperator st = super_transpose(l);
  const GradedMatrix block = st.block();
  try {
    const GradedMatrix inv = inverse(block);
    const GradedMatrix one = GradedMatrix::identity(block.rows());
    auto label = [](std::size_t i, std::size_t j) { return detail::entry_label(i, j); };
    if (auto w = first_difference(block * inv, one, label)) {
      w->location = "st(L)·S " + w->location;
      out.report.fail(*w);
    } else if (auto w2 = first_difference(inv * block, one, label)) {
      w2->location = "S·st(L) " + w2->location;
      out.report.fail(*w2);
    }
    out.image = LOperator::from_block(inv, l.quantum);
    out.image.spectral = l.spectral;
  } catch (const SingularMatrix&) {
    out.report.fail({"st(L)", "singular", ""});
  }
  out.report.millis = clock.millis();
  return out;
}

/// Every Hopf check, sorted by id.
inline std::vector<CheckReport> run_hopf_suite(long n = 6) {
  std::vector<CheckReport> out{check_coproduct_homomorphism()};
  for (auto& r : check_counit()) out.push_back(std::move(r));
  for (auto& r : check_current_coproducts(Var::w1, Var::w2, n)) out.push_back(std::move(r));
  out.push_back(check_antipode_matrix(build_eval_L(Var::w)).report);
  out.push_back(check_antipode_matrix(trivial_L(), "hopf.antipode.trivial").report);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
  return out;
}

}  // namespace sydy
