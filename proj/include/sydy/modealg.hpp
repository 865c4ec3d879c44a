#pragma once

#include <algorithm>
#include <compare>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sydy/dsl.hpp"
#include "sydy/relcheck.hpp"
#include "sydy/series.hpp"

namespace sydy {

/// Which pair of generating matrices enters the RLL relation.
enum class Family { plus_plus, minus_minus, plus_minus };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::plus_plus: return "plus-plus";
    case Family::minus_minus: return "minus-minus";
    case Family::plus_minus: return "plus-minus";
  }
  return "?";
}

inline std::optional<Family> family_from_name(std::string_view s) {
  for (Family f : {Family::plus_plus, Family::minus_minus, Family::plus_minus})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

/// l_ij^k with 1-based i, j; k ≥ 0 belongs to l⁺, k < 0 to l⁻.
struct ModeGenerator {
  int i = 1;
  int j = 1;
  long k = 0;

  Parity parity() const { return static_cast<Parity>(((i - 1) + (j - 1)) & 1); }
  bool plus() const { return k >= 0; }
  std::string to_string() const { return "l" + std::to_string(i) + std::to_string(j) + "^" + std::to_string(k); }

  friend bool operator==(const ModeGenerator&, const ModeGenerator&) = default;
  friend auto operator<=>(const ModeGenerator& a, const ModeGenerator& b) {
    return std::tie(a.i, a.j, a.k) <=> std::tie(b.i, b.j, b.k);
  }
};

using FreeWord = std::vector<ModeGenerator>;

/// Length first, then lexicographic in (i, j, k).
struct WordOrder {
  bool operator()(const FreeWord& a, const FreeWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline Parity parity_of(const FreeWord& w) {
  Parity p = Parity::even;
  for (const auto& g : w) p = p + g.parity();
  return p;
}

inline FreeWord concat(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline std::string to_string(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t n = 0; n < w.size(); ++n) s += (n ? "*" : "") + w[n].to_string();
  return s;
}

/// Element of the free algebra on the l_ij^k with coefficients in Q(ħ, c).
class FreeElement {
 public:
  using Terms = std::map<FreeWord, RationalFunction, WordOrder>;

  FreeElement() = default;
  static FreeElement word(FreeWord w, RationalFunction coef = 1) {
    FreeElement e;
    e.add(std::move(w), coef);
    return e;
  }
  static FreeElement generator(ModeGenerator g) { return word({g}); }
  static FreeElement scalar(const RationalFunction& x) { return word({}, x); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::size_t degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  RationalFunction coefficient(const FreeWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? RationalFunction() : it->second;
  }

  void add(FreeWord w, const RationalFunction& coef) {
    if (coef.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(std::move(w), coef);
    if (fresh) return;
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void set(const FreeWord& w, const RationalFunction& coef) {
    if (coef.is_zero()) {
      terms_.erase(w);
    } else {
      terms_.insert_or_assign(w, coef);
    }
  }

  FreeElement& operator+=(const FreeElement& o) {
    for (const auto& [w, x] : o.terms_) add(w, x);
    return *this;
  }
  FreeElement& operator-=(const FreeElement& o) {
    for (const auto& [w, x] : o.terms_) add(w, -x);
    return *this;
  }
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }

  friend FreeElement operator*(const RationalFunction& s, const FreeElement& a) {
    FreeElement r;
    if (s.is_zero()) return r;
    for (const auto& [w, x] : a.terms_) r.terms_.emplace(w, s * x);
    return r;
  }

  /// Concatenation product of the free algebra.
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b) {
    FreeElement r;
    for (const auto& [wa, xa] : a.terms_)
      for (const auto& [wb, xb] : b.terms_) r.add(concat(wa, wb), xa * xb);
    return r;
  }

  FreeElement substitute(Var x, const RationalFunction& value) const {
    FreeElement r;
    for (const auto& [w, c] : terms_) r.add(w, c.substitute(x, value));
    return r;
  }

  bool parity_homogeneous() const {
    if (terms_.empty()) return true;
    const Parity p = parity_of(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [p](const auto& t) { return parity_of(t.first) == p; });
  }

  std::set<ModeGenerator> generators() const {
    std::set<ModeGenerator> out;
    for (const auto& [w, x] : terms_) out.insert(w.begin(), w.end());
    return out;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, x] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += "(" + x.to_string() + ")";
      if (!w.empty()) s += "*" + sydy::to_string(w);
    }
    return s;
  }

  friend bool operator==(const FreeElement&, const FreeElement&) = default;

 private:
  Terms terms_;
};

/// Graded commutator a·b − (−1)^{p(a)p(b)} b·a of two generators.
inline FreeElement supercommutator(const ModeGenerator& a, const ModeGenerator& b) {
  const int s = sign_of(bit(a.parity()) * bit(b.parity()));
  FreeElement r = FreeElement::word({a, b});
  r.add({b, a}, -s);
  return r;
}

/// One coefficient of the cleared RLL identity.
struct ModeRelation {
  Family family = Family::plus_plus;
  std::size_t row = 0;  // (ik) on V⊗V, 0-based i*2+k
  std::size_t col = 0;  // (jl)
  long u_exp = 0;
  long v_exp = 0;
  FreeElement element;

  std::string label() const {
    return to_string(family) + " (" + tensor_label(row, 2) + "),(" + tensor_label(col, 2) + ") u^" +
           std::to_string(u_exp) + " v^" + std::to_string(v_exp);
  }
};

namespace detail {

using Series1 = std::map<long, FreeElement>;
using Series2 = std::map<std::pair<long, long>, FreeElement>;

/// Mode range of a family sign at bound N: l⁺ uses k = 0..N, l⁻ uses k = −N−1..−1.
inline std::pair<long, long> mode_range(bool plus, long n) { return plus ? std::pair{0L, n} : std::pair{-n - 1, -1L}; }

/// l⁺_ij(x) = δ_ij − ħ Σ_{k≥0} l^k x^{−k−1};  l⁻_ij(x) = δ_ij + ħ Σ_{k<0} l^k x^{−k−1}.
inline Series1 generating_series(int i, int j, bool plus, long n) {
  Series1 s;
  if (i == j) s[0] += FreeElement::scalar(1);
  const RationalFunction h = rf(Var::hbar);
  const auto [lo, hi] = mode_range(plus, n);
  for (long k = lo; k <= hi; ++k) s[-k - 1] += (plus ? -h : h) * FreeElement::generator({i, j, k});
  return s;
}

/// Product x(u)·y(v) with the u-word first when `u_first`, else the v-word first.
inline Series2 bi_product(const Series1& su, const Series1& sv, bool u_first) {
  Series2 r;
  for (const auto& [a, x] : su)
    for (const auto& [b, y] : sv) r[{a, b}] += u_first ? x * y : y * x;
  return r;
}

/// Multiplies by a polynomial in u, v whose coefficients involve ħ and c only.
inline Series2 times_poly(const Series2& s, const Polynomial& p) {
  Series2 r;
  for (const auto& t : p.terms()) {
    const long du = t.mono.degree(Var::u);
    const long dv = t.mono.degree(Var::v);
    const RationalFunction coef(Polynomial::monomial(t.mono.without(Var::u).without(Var::v), t.coef));
    for (const auto& [e, x] : s) r[{e.first + du, e.second + dv}] += coef * x;
  }
  return r;
}

/// (x I + ħ P) on V⊗V as polynomial entries.
inline std::map<std::pair<std::size_t, std::size_t>, Polynomial> cleared_r(const Polynomial& x) {
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> m;
  const GradedMatrix p = super_permutation(GradedSpace::gl11());
  for (std::size_t a = 0; a < 4; ++a) m[{a, a}] += x;
  for (const auto& [ij, s] : p.entries()) m[ij] += Polynomial::var(Var::hbar).scaled(s.constant_value());
  std::erase_if(m, [](const auto& kv) { return kv.second.is_zero(); });
  return m;
}

inline int eta(std::size_t a, std::size_t b) { return a == 1 && b == 1 ? -1 : 1; }

struct ExactBounds {
  long u_lo, u_hi, v_lo, v_hi;
  bool contains(long eu, long ev) const { return eu >= u_lo && eu <= u_hi && ev >= v_lo && ev <= v_hi; }
};

inline std::pair<long, long> degree_range(const std::vector<Polynomial>& ps, Var x) {
  long lo = std::numeric_limits<long>::max();
  long hi = 0;
  for (const auto& p : ps)
    for (const auto& t : p.terms()) {
      lo = std::min<long>(lo, t.mono.degree(x));
      hi = std::max<long>(hi, t.mono.degree(x));
    }
  return {lo == std::numeric_limits<long>::max() ? 0 : lo, hi};
}

/// Exponents whose coefficient receives no contribution from modes outside the window.
inline ExactBounds exact_bounds(bool u_plus, bool v_plus, long n, const std::vector<Polynomial>& multipliers) {
  constexpr long big = std::numeric_limits<long>::max() / 4;
  auto one = [&](bool plus, Var x) -> std::pair<long, long> {
    const auto [dlo, dhi] = degree_range(multipliers, x);
    if (plus) return {-(n + 1) + dhi, big};  // known exponents ≥ −N−1
    return {-big, n + dlo};                  // known exponents ≤ N
  };
  const auto [ulo, uhi] = one(u_plus, Var::u);
  const auto [vlo, vhi] = one(v_plus, Var::v);
  return {ulo, uhi, vlo, vhi};
}

}  // namespace detail

/// Coefficients of the cleared RLL identity (x I + ħP)(x')·L1(u) ηL2(v)η = ηL2(v)η L1(u)·(…), component-wise.
/// plus-minus uses R(u₋ − v₊) on the left and R(u₊ − v₋) on the right, u± = u ± ħc/4; `shifted = false` drops c.
inline std::vector<ModeRelation> extract_mode_relations(Family family, long n, bool shifted = true) {
  if (n < 1) throw Error("mode bound must be at least 1");
  const bool u_plus = family != Family::minus_minus;
  const bool v_plus = family == Family::plus_plus;
  const Polynomial u = Polynomial::var(Var::u);
  const Polynomial v = Polynomial::var(Var::v);
  const Polynomial h = Polynomial::var(Var::hbar);
  const Polynomial half_hc =
      family == Family::plus_minus && shifted ? (h * Polynomial::var(Var::c)).scaled(Rational(1, 2)) : Polynomial();
  const Polynomial x_left = u - v - half_hc;
  const Polynomial x_right = u - v + half_hc;
  auto left = detail::cleared_r(x_left);
  auto right = detail::cleared_r(x_right);
  Polynomial left_extra(1);
  Polynomial right_extra(1);
  if (family == Family::plus_minus) {
    // R(x) = (xI + ħP)/(x + ħ): clear both denominators on both sides
    left_extra = x_right + h;
    right_extra = x_left + h;
  }
  for (auto& [ij, p] : left) p *= left_extra;
  for (auto& [ij, p] : right) p *= right_extra;
  std::vector<Polynomial> all;
  for (const auto& [ij, p] : left) all.push_back(p);
  for (const auto& [ij, p] : right) all.push_back(p);
  const detail::ExactBounds bounds = detail::exact_bounds(u_plus, v_plus, n, all);

  detail::Series1 lu[2][2];
  detail::Series1 lv[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      lu[i][j] = detail::generating_series(i + 1, j + 1, u_plus, n);
      lv[i][j] = detail::generating_series(i + 1, j + 1, v_plus, n);
    }

  std::vector<ModeRelation> out;
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col) {
      const std::size_t i = row / 2, k = row % 2, j = col / 2, l = col % 2;
      detail::Series2 total;
      // Σ_ab M_{(ik),(ab)} · l_aj(u) l_bl(v) η_jb η_jl
      for (const auto& [ab, p] : left) {
        if (ab.first != row) continue;
        const std::size_t a = ab.second / 2, b = ab.second % 2;
        const RationalFunction s(detail::eta(j, b) * detail::eta(j, l));
        for (const auto& [e, x] : detail::times_poly(detail::bi_product(lu[a][j], lv[b][l], true), p))
          total[e] += s * x;
      }
      // − Σ_ab η_ik η_ib l_kb(v) l_ia(u) · M'_{(ab),(jl)}
      for (const auto& [ab, p] : right) {
        if (ab.second != col) continue;
        const std::size_t a = ab.first / 2, b = ab.first % 2;
        const RationalFunction s(-detail::eta(i, k) * detail::eta(i, b));
        for (const auto& [e, x] : detail::times_poly(detail::bi_product(lu[i][a], lv[k][b], false), p))
          total[e] += s * x;
      }
      for (auto& [e, x] : total)
        if (bounds.contains(e.first, e.second)) out.push_back({family, row, col, e.first, e.second, std::move(x)});
    }
  return out;
}

inline std::vector<FreeElement> relation_elements(const std::vector<ModeRelation>& rels, bool drop_zero = true) {
  std::vector<FreeElement> out;
  for (const auto& r : rels)
    if (!drop_zero || !r.element.is_zero()) out.push_back(r.element);
  return out;
}

/// Numeric mode matrices of an evaluation-type L at c = 0.
class RepModes {
 public:
  explicit RepModes(LOperator l, Specialization spec = {}) : l_(std::move(l)), spec_(std::move(spec)) {}

  /// l^k read off the expansion of l_ij at u = ∞ (k ≥ 0) or u = 0 (k < 0).
  const GradedMatrix& mode(const ModeGenerator& g) {
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
    const GradedMatrix& entry = l_.l(static_cast<std::size_t>(g.i - 1), static_cast<std::size_t>(g.j - 1));
    const long e = -g.k - 1;
    const RationalFunction inv_h = rf(Var::hbar).inverse();
    GradedMatrix m;
    if (g.plus()) {
      const OperatorSeries s = expand(entry, l_.spectral, Region::infinity, g.k + 1);
      m = (-inv_h) * s[e];
    } else {
      const OperatorSeries s = expand(entry, l_.spectral, Region::zero, e);
      m = s[e];
      if (g.k == -1 && g.i == g.j) m = m - GradedMatrix::identity(l_.quantum);
      m = inv_h * m;
    }
    m = m.transformed([&](const RationalFunction& x) { return apply(x); });
    return cache_.emplace(g, std::move(m)).first->second;
  }

  RationalFunction apply(const RationalFunction& x) const {
    RationalFunction r = x.substitute(Var::c, RationalFunction());
    if (!spec_.empty()) r = r.substitute(spec_);
    return r;
  }

  const GradedSpace& quantum() const { return l_.quantum; }

 private:
  LOperator l_;
  Specialization spec_;
  std::map<ModeGenerator, GradedMatrix> cache_;
};

/// Substitutes representation modes into a free element; words become ordinary operator products.
inline GradedMatrix specialize_to_rep(const FreeElement& elem, RepModes& modes) {
  GradedMatrix total(modes.quantum());
  for (const auto& [w, coef] : elem.terms()) {
    const RationalFunction c = modes.apply(coef);
    if (c.is_zero()) continue;
    GradedMatrix prod = GradedMatrix::identity(modes.quantum());
    for (const auto& g : w) prod = prod * modes.mode(g);
    total = total + c * prod;
  }
  return total;
}

inline GradedMatrix specialize_to_rep(const FreeElement& elem, const LOperator& rep) {
  RepModes modes(rep);
  return specialize_to_rep(elem, modes);
}

/// Every extracted relation of a family vanishes on the evaluation representation.
inline CheckReport check_relations_in_rep(Family family, long n, const LOperator& rep = build_eval_L(Var::w)) {
  Stopwatch clock;
  CheckReport rep_out{.id = "modealg." + to_string(family) + ".rep", .window = static_cast<int>(n)};
  RepModes modes(rep);
  const auto rels = extract_mode_relations(family, n);
  for (const auto& r : rels) {
    const GradedMatrix value = specialize_to_rep(r.element, modes);
    if (!value.is_zero()) {
      const auto& [ij, x] = *value.entries().begin();
      rep_out.fail({r.label() + " " + detail::entry_label(ij.first, ij.second), x.to_string(), "0"});
      break;
    }
  }
  rep_out.note = std::to_string(rels.size()) + " relations";
  rep_out.millis = clock.millis();
  return rep_out;
}

struct CertificateTerm {
  FreeWord left;
  std::size_t relation = 0;
  FreeWord right;
  RationalFunction coef;
};

struct MembershipResult {
  CheckReport report;
  bool member = false;
  std::vector<CertificateTerm> certificate;
  FreeElement residual;
  std::size_t basis_size = 0;
  std::size_t products = 0;
};

class BasisCapExceeded : public Error {
 public:
  BasisCapExceeded(std::size_t size, std::size_t cap)
      : Error("monomial basis of " + std::to_string(size) + " words exceeds the cap of " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}
  std::size_t size() const { return size_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t size_;
  std::size_t cap_;
};

/// Σ coef · left · relations[idx] · right.
inline FreeElement expand_certificate(const std::vector<CertificateTerm>& cert, const std::vector<FreeElement>& relations) {
  FreeElement r;
  for (const auto& t : cert)
    r += t.coef * (FreeElement::word(t.left) * relations.at(t.relation) * FreeElement::word(t.right));
  return r;
}

inline std::string to_string(const CertificateTerm& t) {
  return "(" + to_string(t.left) + ", " + std::to_string(t.relation) + ", " + to_string(t.right) + ", " +
         t.coef.to_string() + ")";
}

namespace detail {

/// All words of length ≤ d over the alphabet, shortest first.
inline std::vector<FreeWord> words_up_to(const std::vector<ModeGenerator>& alphabet, std::size_t d) {
  std::vector<FreeWord> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= d; ++len) {
    const std::size_t end = out.size();
    for (std::size_t n = begin; n < end; ++n)
      for (const auto& g : alphabet) out.push_back(concat(out[n], {g}));
    begin = end;
  }
  return out;
}

struct EchelonRow {
  FreeElement value;                               // leading (smallest) word is the pivot
  std::map<std::size_t, RationalFunction> combo;  // in terms of the product list
};

inline void add_combo(std::map<std::size_t, RationalFunction>& a, const std::map<std::size_t, RationalFunction>& b,
                      const RationalFunction& s) {
  for (const auto& [k, x] : b) {
    auto& slot = a[k];
    slot += s * x;
    if (slot.is_zero()) a.erase(k);
  }
}

/// Eliminates pivot words in increasing order; pivot rows only contain words after their pivot.
inline void reduce(FreeElement& v, std::map<std::size_t, RationalFunction>& combo,
                   const std::map<FreeWord, EchelonRow, WordOrder>& pivots) {
  std::optional<FreeWord> cursor;
  while (true) {
    const auto& t = v.terms();
    auto it = cursor ? t.upper_bound(*cursor) : t.begin();
    while (it != t.end() && !pivots.contains(it->first)) ++it;
    if (it == t.end()) return;
    const FreeWord w = it->first;
    const RationalFunction f = it->second;
    const EchelonRow& row = pivots.at(w);
    v -= f * row.value;
    add_combo(combo, row.combo, -f);
    cursor = w;
  }
}

}  // namespace detail

/// Decides candidate ∈ span{a·r·b : deg ≤ D} by exact elimination over Q(ħ, c).
inline MembershipResult ideal_membership(const FreeElement& candidate, const std::vector<FreeElement>& relations,
                                         std::size_t degree, std::size_t cap = 20000,
                                         const std::string& id = "modealg.ideal") {
  Stopwatch clock;
  MembershipResult res;
  res.report.id = id;
  res.report.window = static_cast<int>(degree);
  if (degree < 2) throw Error("ideal membership needs degree D ≥ 2");
  if (candidate.degree() > degree) throw Error("candidate degree exceeds D");

  std::set<ModeGenerator> alpha_set = candidate.generators();
  for (const auto& r : relations) {
    auto g = r.generators();
    alpha_set.insert(g.begin(), g.end());
  }
  const std::vector<ModeGenerator> alphabet(alpha_set.begin(), alpha_set.end());

  struct Product {
    FreeWord left;
    std::size_t relation;
    FreeWord right;
  };
  std::vector<Product> products;
  std::set<FreeWord, WordOrder> basis;
  for (const auto& [w, x] : candidate.terms()) basis.insert(w);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    if (relations[r].is_zero()) continue;
    const std::size_t d = relations[r].degree();
    if (d > degree) continue;
    const auto multipliers = detail::words_up_to(alphabet, degree - d);
    for (const auto& a : multipliers)
      for (const auto& b : multipliers) {
        if (a.size() + b.size() + d > degree) continue;
        products.push_back({a, r, b});
        for (const auto& [w, x] : relations[r].terms()) {
          basis.insert(concat(concat(a, w), b));
          if (basis.size() > cap) throw BasisCapExceeded(basis.size(), cap);
        }
      }
  }
  res.basis_size = basis.size();
  res.products = products.size();

  std::map<FreeWord, detail::EchelonRow, WordOrder> pivots;
  for (std::size_t p = 0; p < products.size(); ++p) {
    const Product& pr = products[p];
    FreeElement v = FreeElement::word(pr.left) * relations[pr.relation] * FreeElement::word(pr.right);
    std::map<std::size_t, RationalFunction> combo{{p, RationalFunction(1)}};
    detail::reduce(v, combo, pivots);
    if (v.is_zero()) continue;
    const FreeWord lead = v.terms().begin()->first;
    const RationalFunction inv = v.terms().begin()->second.inverse();
    v = inv * v;
    for (auto& [k, x] : combo) x *= inv;
    pivots.emplace(lead, detail::EchelonRow{std::move(v), std::move(combo)});
  }

  FreeElement rest = candidate;
  std::map<std::size_t, RationalFunction> combo;
  detail::reduce(rest, combo, pivots);
  res.residual = rest;
  res.member = rest.is_zero();
  if (res.member) {
    // candidate − Σ combo_p · product_p = 0
    for (const auto& [p, x] : combo) res.certificate.push_back({products[p].left, products[p].relation, products[p].right, -x});
    if (expand_certificate(res.certificate, relations) != candidate)
      res.report.fail({"certificate", "re-expansion differs from candidate", candidate.to_string()});
    res.report.note = std::to_string(res.certificate.size()) + " certificate terms, basis " +
                      std::to_string(res.basis_size);
  } else {
    res.report.fail({"residual", rest.to_string(), "0"});
  }
  res.report.millis = clock.millis();
  return res;
}

namespace detail {

/// expr := term (('+'|'-') term)* ; term := coef? (word | '[' g ',' g ']' | '{' g ',' g '}') ;
/// coef := scalar ('*' scalar)* '*' ; scalar := integer ('/' integer)? | 'hbar' | 'c' ; word := g ('*' g)* ;
/// g := 'l' [12] [12] '^' '-'? integer
class FreeElementParser {
 public:
  explicit FreeElementParser(std::string_view text) : text_(text) {}

  FreeElement parse() {
    FreeElement out = term();
    skip();
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const bool minus = text_[pos_++] == '-';
      const FreeElement t = term();
      out += minus ? RationalFunction(-1) * t : t;
      skip();
    }
    if (pos_ < text_.size()) fail("expected '+', '-' or end of input", {"+", "-", "end of input"});
    return out;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char ch) {
    skip();
    return pos_ < text_.size() && text_[pos_] == ch;
  }
  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'", {std::string(1, ch)});
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    const std::size_t end = std::min(pos_ + 1, text_.size());
    throw ParseError(what, SourceSpan{pos_, end, 1, pos_ + 1}, std::move(expected));
  }

  bool at_generator() {
    skip();
    return pos_ + 1 < text_.size() && text_[pos_] == 'l' && (text_[pos_ + 1] == '1' || text_[pos_ + 1] == '2');
  }

  long integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer", {"integer"});
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::optional<RationalFunction> scalar() {
    skip();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      Rational x(integer());
      if (peek('/')) {
        ++pos_;
        const long d = integer();
        if (d == 0) fail("division by zero", {"integer"});
        x /= d;
      }
      return RationalFunction(x);
    }
    if (text_.substr(pos_, 4) == "hbar") {
      pos_ += 4;
      return rf(Var::hbar);
    }
    if (text_.substr(pos_, 1) == "c") {
      ++pos_;
      return rf(Var::c);
    }
    return std::nullopt;
  }

  ModeGenerator generator() {
    if (!at_generator()) fail("expected a generator l_ij^k", {"l11", "l12", "l21", "l22"});
    ++pos_;
    const int i = text_[pos_++] - '0';
    if (pos_ >= text_.size() || (text_[pos_] != '1' && text_[pos_] != '2')) fail("expected index 1 or 2", {"1", "2"});
    const int j = text_[pos_++] - '0';
    expect('^');
    bool neg = false;
    if (peek('-')) {
      ++pos_;
      neg = true;
    }
    const long k = integer();
    return {i, j, neg ? -k : k};
  }

  FreeElement term() {
    RationalFunction coef(1);
    while (auto s = scalar()) {
      coef *= *s;
      expect('*');
    }
    if (peek('[') || peek('{')) {
      const bool anti = text_[pos_++] == '{';
      const ModeGenerator a = generator();
      expect(',');
      const ModeGenerator b = generator();
      expect(anti ? '}' : ']');
      FreeElement r = FreeElement::word({a, b});
      r.add({b, a}, anti ? 1 : -1);
      return coef * r;
    }
    FreeWord w{generator()};
    while (peek('*')) {
      ++pos_;
      w.push_back(generator());
    }
    return FreeElement::word(std::move(w), coef);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FreeElement parse_free_element(std::string_view text) { return detail::FreeElementParser(text).parse(); }

/// [l11^m, l11^n] for 0 ≤ m < n ≤ N and the squares of the lowest odd + modes.
inline std::vector<std::pair<std::string, FreeElement>> standard_candidates(long n) {
  std::vector<std::pair<std::string, FreeElement>> out;
  for (long m = 0; m <= n; ++m)
    for (long k = m + 1; k <= n; ++k)
      out.emplace_back("[l11^" + std::to_string(m) + ", l11^" + std::to_string(k) + "]",
                       supercommutator({1, 1, m}, {1, 1, k}));
  out.emplace_back("l12^0*l12^0", FreeElement::word({{1, 2, 0}, {1, 2, 0}}));
  out.emplace_back("l21^0*l21^0", FreeElement::word({{2, 1, 0}, {2, 1, 0}}));
  return out;
}

}  // namespace sydy
