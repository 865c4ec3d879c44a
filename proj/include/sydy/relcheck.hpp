#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sydy/check_report.hpp"
#include "sydy/dsl.hpp"
#include "sydy/evalrep.hpp"
#include "sydy/series.hpp"

namespace sydy {

class EvaluationError : public Error {
 public:
  using Error::Error;
};

using Specialization = std::map<Var, RationalFunction>;

/// The representation a relation is checked in, with c = 0 and optional extra specializations.
struct RepContext {
  CurrentSet currents;
  std::optional<LOperator> l;
  Specialization specialize;

  /// Evaluation representation at point w, transformed currents included.
  static RepContext evaluation(Var w = Var::w, Specialization spec = {}) {
    RepContext ctx;
    LOperator l = build_eval_L(w);
    ctx.currents = transform_currents(gauss_decompose(l));
    ctx.l = l;
    ctx.specialize = std::move(spec);
    ctx.apply_specialization();
    return ctx;
  }

  static RepContext from_currents(CurrentSet c, Specialization spec = {}) {
    RepContext ctx;
    ctx.currents = c.transformed ? std::move(c) : transform_currents(std::move(c));
    ctx.specialize = std::move(spec);
    ctx.apply_specialization();
    return ctx;
  }

  /// Scalars of a relation with c ↦ 0 and the specializations applied.
  RationalFunction scalar(const RationalFunction& x) const {
    Specialization s = specialize;
    s.emplace(Var::c, RationalFunction());
    return x.substitute(s);
  }

  RationalFunction arg_value(const Arg& a) const { return scalar(a.value()); }

  void apply_specialization() {
    if (specialize.empty()) return;
    auto sp = [&](GradedMatrix& m) { m = m.substitute(specialize); };
    for (GradedMatrix* m : {&currents.k1, &currents.k2, &currents.e, &currents.f, &currents.K, &currents.H,
                            &currents.E, &currents.F})
      sp(*m);
    if (l)
      for (auto& e : l->entries) sp(e);
  }

  /// The rational operator of an atom piece (ignores the ± tag) at a spectral argument.
  GradedMatrix atom_value(AtomKind kind, const RationalFunction& at) const {
    const CurrentSet& c = currents;
    auto shadow = [&](const GradedMatrix& m) { return m.substitute(c.spectral, at); };
    switch (kind) {
      case AtomKind::k1: return shadow(c.k1);
      case AtomKind::k2: return shadow(c.k2);
      case AtomKind::e: return shadow(c.e);
      case AtomKind::f: return shadow(c.f);
      case AtomKind::K: return shadow(c.K);
      case AtomKind::H: return shadow(c.H);
      case AtomKind::E: return shadow(c.E);
      case AtomKind::F: return shadow(c.F);
      case AtomKind::l11:
      case AtomKind::l12:
      case AtomKind::l21:
      case AtomKind::l22: {
        if (!l) throw EvaluationError("L-entries are not available in this representation");
        const int idx = static_cast<int>(kind) - static_cast<int>(AtomKind::l11);
        return l->l(static_cast<std::size_t>(idx / 2), static_cast<std::size_t>(idx % 2)).substitute(l->spectral, at);
      }
      case AtomKind::X: break;
    }
    throw EvaluationError("X has no single-piece value");
  }
};

// ============================================================================
// Rational shadows
// ============================================================================

namespace detail {

inline GradedMatrix eval_rational(const NodePtr& n, const RepContext& ctx) {
  const GradedSpace& q = ctx.currents.quantum;
  if (auto x = n->as<ScalarNode>()) return GradedMatrix::scalar(q, ctx.scalar(x->value));
  if (auto x = n->as<AtomNode>()) {
    AtomKind kind = x->kind;
    if (kind == AtomKind::X) kind = x->sign == AtomSign::plus ? AtomKind::e : AtomKind::f;
    return ctx.atom_value(kind, ctx.arg_value(x->arg));
  }
  if (n->as<DeltaNode>()) throw EvaluationError("delta has no rational shadow");
  if (auto x = n->as<SumNode>()) {
    GradedMatrix acc(q);
    for (const auto& [sign, t] : x->terms) acc = sign > 0 ? acc + eval_rational(t, ctx) : acc - eval_rational(t, ctx);
    return acc;
  }
  if (auto x = n->as<NegNode>()) return -eval_rational(x->x, ctx);
  if (auto x = n->as<MulNode>()) {
    GradedMatrix acc = GradedMatrix::identity(q);
    for (const auto& f : x->factors) acc = acc * eval_rational(f, ctx);
    return acc;
  }
  if (auto x = n->as<BracketNode>()) {
    const GradedMatrix a = eval_rational(x->a, ctx);
    const GradedMatrix b = eval_rational(x->b, ctx);
    return x->anti ? a * b + b * a : a * b - b * a;
  }
  const GradedMatrix inner = eval_rational(n->as<InverseNode>()->x, ctx);
  try {
    return inverse(inner);
  } catch (const SingularMatrix&) {
    throw EvaluationError("inverse of a singular operator");
  }
}

inline std::string entry_label(std::size_t i, std::size_t j) {
  return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline CheckReport evaluation_failure(const std::string& id, const std::string& message) {
  CheckReport rep{.id = id};
  rep.fail({"evaluation error", message, ""});
  return rep;
}

}  // namespace detail

inline bool has_delta(const Relation& r) {
  bool found = false;
  auto visit = [&](const Node& n) { found = found || n.as<DeltaNode>() != nullptr; };
  for_each_leaf(r.lhs, visit);
  for_each_leaf(r.rhs, visit);
  return found;
}

/// Both sides as operator-valued rational functions; exact entrywise comparison.
inline CheckReport check_relation_rational(const Relation& rel, const RepContext& ctx, const std::string& id = "relation") {
  Stopwatch clock;
  CheckReport rep{.id = id};
  try {
    const GradedMatrix lhs = detail::eval_rational(rel.lhs, ctx);
    const GradedMatrix rhs = detail::eval_rational(rel.rhs, ctx);
    if (auto w = first_difference(lhs, rhs, detail::entry_label)) rep.fail(*w);
  } catch (const Error& e) {
    rep = detail::evaluation_failure(id, e.what());
  }
  rep.millis = clock.millis();
  return rep;
}

// ============================================================================
// Distributional evaluation
// ============================================================================

namespace detail {

struct Factor {
  Var var;
  Region region;
  GradedMatrix value;
};

/// coef · [δ(u - v)] · Π factors, factors in expression order.
struct DistMonomial {
  RationalFunction coef{1};
  bool delta = false;
  std::vector<Factor> factors;
};

using DistExpansion = std::vector<DistMonomial>;

inline DistMonomial times(const DistMonomial& a, const DistMonomial& b) {
  if (a.delta && b.delta) throw EvaluationError("products of two delta distributions are not supported");
  DistMonomial r{a.coef * b.coef, a.delta || b.delta, a.factors};
  r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
  return r;
}

inline DistExpansion times(const DistExpansion& a, const DistExpansion& b) {
  DistExpansion r;
  for (const auto& x : a)
    for (const auto& y : b) r.push_back(times(x, y));
  return r;
}

inline DistExpansion scaled(DistExpansion a, const RationalFunction& s) {
  for (auto& m : a) m.coef = s * m.coef;
  return a;
}

inline DistExpansion concat(DistExpansion a, const DistExpansion& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline DistMonomial piece(const RepContext& ctx, AtomKind kind, AtomSign sign, const Arg& arg, int central) {
  Arg a = arg;
  a.shift += central_shift(central);
  return DistMonomial{RationalFunction(1), false,
                      {Factor{a.var, sign == AtomSign::plus ? Region::infinity : Region::zero,
                              ctx.atom_value(kind, ctx.arg_value(a))}}};
}

inline DistExpansion expand_node(const NodePtr& n, const RepContext& ctx) {
  if (auto x = n->as<ScalarNode>()) return {DistMonomial{ctx.scalar(x->value), false, {}}};
  if (auto x = n->as<AtomNode>()) {
    switch (x->kind) {
      case AtomKind::X:
        // X+(v) = e+(v-) - e-(v+),  X-(v) = f+(v+) - f-(v-)
        if (x->sign == AtomSign::plus)
          return {piece(ctx, AtomKind::e, AtomSign::plus, x->arg, -1),
                  scaled({piece(ctx, AtomKind::e, AtomSign::minus, x->arg, 1)}, -1)[0]};
        return {piece(ctx, AtomKind::f, AtomSign::plus, x->arg, 1),
                scaled({piece(ctx, AtomKind::f, AtomSign::minus, x->arg, -1)}, -1)[0]};
      case AtomKind::E:
        if (x->sign == AtomSign::none)
          return {piece(ctx, AtomKind::E, AtomSign::plus, x->arg, -1),
                  scaled({piece(ctx, AtomKind::E, AtomSign::minus, x->arg, 1)}, -1)[0]};
        break;
      case AtomKind::F:
        if (x->sign == AtomSign::none)
          return {piece(ctx, AtomKind::F, AtomSign::plus, x->arg, 1),
                  scaled({piece(ctx, AtomKind::F, AtomSign::minus, x->arg, -1)}, -1)[0]};
        break;
      default: break;
    }
    return {piece(ctx, x->kind, x->sign, x->arg, 0)};
  }
  if (auto x = n->as<DeltaNode>()) {
    const RationalFunction gap = ctx.scalar(RationalFunction(x->a.shift - x->b.shift));
    if (!gap.is_zero()) throw EvaluationError("delta arguments with a residual shift are not supported");
    return {DistMonomial{RationalFunction(1), true, {}}};
  }
  if (auto x = n->as<SumNode>()) {
    DistExpansion r;
    for (const auto& [sign, t] : x->terms) r = concat(std::move(r), scaled(expand_node(t, ctx), sign));
    return r;
  }
  if (auto x = n->as<NegNode>()) return scaled(expand_node(x->x, ctx), -1);
  if (auto x = n->as<MulNode>()) {
    DistExpansion r{DistMonomial{}};
    for (const auto& f : x->factors) r = times(r, expand_node(f, ctx));
    return r;
  }
  if (auto x = n->as<BracketNode>()) {
    const DistExpansion a = expand_node(x->a, ctx);
    const DistExpansion b = expand_node(x->b, ctx);
    return concat(times(a, b), scaled(times(b, a), x->anti ? 1 : -1));
  }
  const DistExpansion inner = expand_node(n->as<InverseNode>()->x, ctx);
  if (inner.size() != 1 || inner[0].delta)
    throw EvaluationError("inverse is only defined for a single product of currents");
  const DistMonomial& m = inner[0];
  if (m.coef.is_zero()) throw EvaluationError("inverse of zero");
  if (m.factors.empty()) return {DistMonomial{m.coef.inverse(), false, {}}};
  GradedMatrix prod = GradedMatrix::identity(ctx.currents.quantum);
  for (const auto& f : m.factors) {
    if (f.var != m.factors[0].var || f.region != m.factors[0].region)
      throw EvaluationError("inverse of a product mixing variables or expansion regions");
    prod = prod * f.value;
  }
  GradedMatrix inv;
  try {
    inv = inverse(prod);
  } catch (const SingularMatrix&) {
    throw EvaluationError("inverse of a singular operator");
  }
  return {DistMonomial{m.coef.inverse(), false, {Factor{m.factors[0].var, m.factors[0].region, inv}}}};
}

/// Adjacent factors in the same variable and region are multiplied out.
inline void merge_factors(DistMonomial& m) {
  std::vector<Factor> out;
  std::map<Var, Region> regions;
  for (auto& f : m.factors) {
    auto [it, fresh] = regions.emplace(f.var, f.region);
    if (!fresh && it->second != f.region) {
      // a polynomial factor has no region; only true series clash
      bool poly = true;
      for (const auto& [ij, x] : f.value.entries()) poly = poly && x.is_polynomial();
      if (!poly) throw EvaluationError("one product expands the same variable in two regions");
      f.region = it->second;
    }
    if (!out.empty() && out.back().var == f.var && out.back().region == f.region) {
      out.back().value = out.back().value * f.value;
    } else {
      out.push_back(std::move(f));
    }
  }
  m.factors = std::move(out);
}

struct SeparablePath {
  std::size_t row;
  std::size_t col;
  RationalFunction u_part;
  RationalFunction v_part;
};

/// Entries of the ordered operator product, each split into a u-part and a v-part.
inline std::vector<SeparablePath> separable_paths(const DistMonomial& m, std::size_t dim) {
  std::vector<SeparablePath> paths;
  for (std::size_t a = 0; a < dim; ++a) paths.push_back({a, a, RationalFunction(1), RationalFunction(1)});
  for (const auto& f : m.factors) {
    std::vector<SeparablePath> next;
    for (const auto& p : paths) {
      auto it = f.value.entries().lower_bound({p.col, 0});
      for (; it != f.value.entries().end() && it->first.first == p.col; ++it) {
        SeparablePath q{p.row, it->first.second, p.u_part, p.v_part};
        if (f.var == Var::u) {
          q.u_part = q.u_part * it->second;
        } else if (f.var == Var::v) {
          q.v_part = q.v_part * it->second;
        } else {
          throw EvaluationError("spectral arguments must be u or v");
        }
        next.push_back(std::move(q));
      }
    }
    paths = std::move(next);
  }
  return paths;
}

inline Region region_of(const DistMonomial& m, Var x) {
  for (const auto& f : m.factors)
    if (f.var == x) return f.region;
  return Region::infinity;
}

/// Pairwise coprime polynomials over which every expansion denominator of one check factors.
class CoprimeBase {
 public:
  void add(const Polynomial& x) {
    if (x.is_constant()) return;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      const Polynomial g = gcd(x, f_[i]);
      if (g.is_constant()) continue;
      const Polynomial fi = f_[i];
      f_.erase(f_.begin() + static_cast<std::ptrdiff_t>(i));
      add(g);
      add(*Polynomial::divide_exact(fi, g));
      add(*Polynomial::divide_exact(x, g));
      return;
    }
    f_.push_back(x.monic());
  }

  /// p = κ · Π f_i^{e_i}.
  std::pair<Rational, std::vector<unsigned>> factor(Polynomial p) const {
    std::vector<unsigned> e(f_.size(), 0);
    for (std::size_t i = 0; i < f_.size(); ++i)
      while (auto q = Polynomial::divide_exact(p, f_[i])) {
        p = std::move(*q);
        ++e[i];
      }
    if (!p.is_constant()) throw EvaluationError("denominator does not factor over the expansion base");
    return {p.constant_value(), e};
  }

  const std::vector<Polynomial>& factors() const { return f_; }

  const Polynomial& power(std::size_t i, unsigned e) const {
    auto& cache = powers_[i];
    while (cache.size() <= e) cache.push_back(cache.empty() ? Polynomial(1) : cache.back() * f_[i]);
    return cache[e];
  }

  void seal() { powers_.assign(f_.size(), {}); }

 private:
  std::vector<Polynomial> f_;
  mutable std::vector<std::vector<Polynomial>> powers_;
};

/// num / base^power, unreduced.
struct FracCoef {
  Polynomial num;
  unsigned power = 0;
  bool is_zero() const { return num.is_zero(); }
};

/// Expansion with coefficients N_k / base^(k+1), computed without any gcd.
struct FracSeries {
  TruncatedSeries<FracCoef> series;
  Polynomial base{1};
  Rational kappa{1};
  std::vector<unsigned> exps;
};

inline FracSeries frac_expand(const RationalFunction& f, Var x, Region r, long n) {
  FracSeries out;
  out.series = TruncatedSeries<FracCoef>(x, FracCoef{});
  if (f.is_zero()) return out;
  std::vector<Polynomial> p = f.numerator().coefficients_in(x);
  std::vector<Polynomial> q = f.denominator().coefficients_in(x);
  const long dp = static_cast<long>(p.size()) - 1;
  const long dq = static_cast<long>(q.size()) - 1;
  if (r == Region::infinity) {
    std::reverse(p.begin(), p.end());
    std::reverse(q.begin(), q.end());
  }
  if (q[0].is_zero()) throw ZeroDivisionError("denominator vanishes at " + std::string(var_name(x)) + " = 0");
  out.base = q[0];
  if (dq == 0) {
    for (long k = 0; k <= dp; ++k) out.series.set(r == Region::zero ? k : dp - k, FracCoef{p[static_cast<std::size_t>(k)], 1});
    out.series.set_meta({0, dp}, {0, dp});
    return out;
  }
  // N_k = p_k b^k - Σ_j q_j N_{k-j} b^{j-1}, coefficient k is N_k / b^{k+1}
  const long d = dp - dq;
  const long count = r == Region::zero ? n + 1 : d + n + 1;
  std::vector<Polynomial> bpow{Polynomial(1)};
  std::vector<Polynomial> nk;
  for (long k = 0; k < count; ++k) {
    while (static_cast<long>(bpow.size()) <= k) bpow.push_back(bpow.back() * out.base);
    Polynomial acc = k <= dp ? p[static_cast<std::size_t>(k)] * bpow[static_cast<std::size_t>(k)] : Polynomial();
    for (long j = 1; j <= std::min(k, dq); ++j)
      acc -= q[static_cast<std::size_t>(j)] * nk[static_cast<std::size_t>(k - j)] * bpow[static_cast<std::size_t>(j - 1)];
    nk.push_back(acc);
    out.series.set(r == Region::zero ? k : d - k, FracCoef{acc, static_cast<unsigned>(k + 1)});
  }
  if (r == Region::zero) {
    out.series.set_meta({0, kPosInf}, {0, n});
  } else {
    out.series.set_meta({kNegInf, d}, {-n, d});
  }
  return out;
}

/// One operator entry: Σ num / Π f_i^{e_i}, grouped by exponent vector.
using FracSum = std::map<std::vector<unsigned>, Polynomial>;

struct FracCell {
  std::vector<FracSum> entries;
};

inline void add_into(FracSum& s, std::vector<unsigned> e, const Polynomial& num, int sign = 1) {
  if (num.is_zero()) return;
  auto [it, fresh] = s.emplace(std::move(e), Polynomial());
  it->second = sign > 0 ? it->second + num : it->second - num;
  if (it->second.is_zero()) s.erase(it);
}

/// The sum over its least common denominator, as (numerator, exponents).
inline std::pair<Polynomial, std::vector<unsigned>> combine(const FracSum& s, const CoprimeBase& base) {
  std::vector<unsigned> top(base.factors().size(), 0);
  for (const auto& [e, num] : s)
    for (std::size_t i = 0; i < e.size(); ++i) top[i] = std::max(top[i], e[i]);
  Polynomial total;
  for (const auto& [e, num] : s) {
    Polynomial t = num;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (top[i] > e[i]) t = t * base.power(i, top[i] - e[i]);
    total += t;
  }
  return {total, top};
}

inline RationalFunction to_rational(const FracSum& s, const CoprimeBase& base) {
  auto [num, e] = combine(s, base);
  if (num.is_zero()) return {};
  Polynomial den(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    while (e[i] > 0) {
      auto q = Polynomial::divide_exact(num, base.factors()[i]);
      if (!q) break;
      num = std::move(*q);
      --e[i];
    }
    if (e[i] > 0) den = den * base.power(i, e[i]);
  }
  return RationalFunction::from_coprime(std::move(num), std::move(den));
}

}  // namespace detail

/// Mode tables of both sides over [-N, N]², after multiplying the relation by the common
/// denominator of its scalar coefficients.
class DistributionalTables {
 public:
  DistributionalTables(long n, std::size_t dim) : n_(n), dim_(dim) {}

  long bound() const { return n_; }
  const Polynomial& cleared_by() const { return cleared_by_; }
  bool valid(long m, long k) const { return lhs_.valid(m, k) && rhs_.valid(m, k); }

  bool equal_at(long m, long k) const {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) {
      detail::FracSum diff = lhs_.at(m, k).entries[i];
      for (const auto& [e, num] : rhs_.at(m, k).entries[i]) detail::add_into(diff, e, num, -1);
      if (!diff.empty() && !detail::combine(diff, base_).first.is_zero()) return false;
    }
    return true;
  }

  GradedMatrix lhs(long m, long k) const { return value(lhs_, m, k); }
  GradedMatrix rhs(long m, long k) const { return value(rhs_, m, k); }

 private:
  friend DistributionalTables distributional_tables(const Relation& rel, const RepContext& ctx, long n);

  GradedMatrix value(const ModeTable<detail::FracCell>& t, long m, long k) const {
    GradedMatrix r(space_);
    for (std::size_t i = 0; i < dim_ * dim_; ++i) r.set(i / dim_, i % dim_, detail::to_rational(t.at(m, k).entries[i], base_));
    return r;
  }

  long n_;
  std::size_t dim_;
  GradedSpace space_;
  Polynomial cleared_by_{1};
  detail::CoprimeBase base_;
  ModeTable<detail::FracCell> lhs_{0, {}};
  ModeTable<detail::FracCell> rhs_{0, {}};
};

namespace detail {

inline Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  return (*Polynomial::divide_exact(a * b, gcd(a, b))).monic();
}

struct PreparedMonomial {
  DistMonomial mono;
  // cleared coefficient split as Σ u^α v^β c_αβ
  std::map<std::pair<unsigned, unsigned>, Polynomial> split;
  std::vector<SeparablePath> paths;
};

}  // namespace detail

inline DistributionalTables distributional_tables(const Relation& rel, const RepContext& ctx, long n) {
  detail::DistExpansion lhs = detail::expand_node(rel.lhs, ctx);
  detail::DistExpansion rhs = detail::expand_node(rel.rhs, ctx);
  const std::size_t dim = ctx.currents.quantum.dim();
  DistributionalTables out(n, dim);
  out.space_ = ctx.currents.quantum;
  Polynomial den(1);
  for (const auto* side : {&lhs, &rhs})
    for (const auto& m : *side) den = detail::lcm(den, m.coef.denominator());
  out.cleared_by_ = den;

  unsigned shift = 0;
  auto prepare = [&](detail::DistExpansion& side) {
    std::vector<detail::PreparedMonomial> ms;
    for (auto& m : side) {
      if (m.coef.is_zero()) continue;
      detail::merge_factors(m);
      const Polynomial p = m.coef.numerator() * *Polynomial::divide_exact(den, m.coef.denominator());
      detail::PreparedMonomial pm{std::move(m), {}, {}};
      std::map<std::pair<unsigned, unsigned>, std::vector<Term>> split;
      for (const auto& t : p.terms()) {
        const unsigned a = t.mono.degree(Var::u);
        const unsigned b = t.mono.degree(Var::v);
        shift = std::max({shift, a, b});
        split[{a, b}].push_back({t.mono.without(Var::u).without(Var::v), t.coef});
      }
      for (auto& [ab, terms] : split) pm.split.emplace(ab, Polynomial::from_terms(std::move(terms)));
      pm.paths = detail::separable_paths(pm.mono, dim);
      ms.push_back(std::move(pm));
    }
    return ms;
  };
  const auto lm = prepare(lhs);
  const auto rm = prepare(rhs);
  const long depth = 2 * n + 2 + static_cast<long>(shift);

  // expansions first, so the factor base is complete before any exponent vector is formed
  std::map<std::tuple<std::string, Var, Region>, detail::FracSeries> cache;
  auto series_key = [](const RationalFunction& f, Var x, Region r) { return std::make_tuple(f.to_string(), x, r); };
  for (const auto* side : {&lm, &rm})
    for (const auto& pm : *side) {
      const Region ru = detail::region_of(pm.mono, Var::u);
      const Region rv = detail::region_of(pm.mono, Var::v);
      for (const auto& path : pm.paths) {
        for (auto [f, x, r] : {std::tuple{path.u_part, Var::u, ru}, std::tuple{path.v_part, Var::v, rv}}) {
          auto key = series_key(f, x, r);
          if (cache.count(key)) continue;
          detail::FracSeries s = detail::frac_expand(f, x, r, depth);
          out.base_.add(s.base);
          cache.emplace(std::move(key), std::move(s));
        }
      }
    }
  out.base_.seal();
  for (auto& [key, s] : cache) std::tie(s.kappa, s.exps) = out.base_.factor(s.base);

  const std::size_t nb = out.base_.factors().size();
  detail::FracCell zero_cell{std::vector<detail::FracSum>(dim * dim)};
  auto fill = [&](const std::vector<detail::PreparedMonomial>& ms) {
    ModeTable<detail::FracCell> table(n, zero_cell);
    for (const auto& pm : ms) {
      const Region ru = detail::region_of(pm.mono, Var::u);
      const Region rv = detail::region_of(pm.mono, Var::v);
      for (const auto& path : pm.paths) {
        const detail::FracSeries& us = cache.at(series_key(path.u_part, Var::u, ru));
        const detail::FracSeries& vs = cache.at(series_key(path.v_part, Var::v, rv));
        const std::size_t slot = path.row * dim + path.col;
        auto put = [&](detail::FracCell& cell, const Polynomial& c, const detail::FracCoef& a, const detail::FracCoef& b) {
          std::vector<unsigned> e(nb, 0);
          for (std::size_t i = 0; i < nb; ++i) e[i] = a.power * us.exps[i] + b.power * vs.exps[i];
          Rational scale = 1;
          for (unsigned i = 0; i < a.power; ++i) scale /= us.kappa;
          for (unsigned i = 0; i < b.power; ++i) scale /= vs.kappa;
          detail::add_into(cell.entries[slot], std::move(e), (c * a.num * b.num).scaled(scale));
        };
        for (const auto& [ab, c] : pm.split)
          add_separable(table, c, us.series.shifted(ab.first), vs.series.shifted(ab.second), pm.mono.delta, put);
      }
    }
    return table;
  };
  out.lhs_ = fill(lm);
  out.rhs_ = fill(rm);
  return out;
}

/// Compares both sides mode by mode on the jointly valid pairs of [-N, N]².
inline CheckReport check_relation_distributional(const Relation& rel, const RepContext& ctx, long n,
                                                 const std::string& id = "relation") {
  Stopwatch clock;
  CheckReport rep{.id = id, .window = static_cast<int>(n)};
  try {
    const DistributionalTables t = distributional_tables(rel, ctx, n);
    std::size_t valid = 0;
    for (long m = -n; m <= n && !rep.witness; ++m) {
      for (long k = -n; k <= n; ++k) {
        if (!t.valid(m, k)) continue;
        ++valid;
        if (!t.equal_at(m, k)) {
          rep.fail({"mode (" + std::to_string(m) + "," + std::to_string(k) + ")", t.lhs(m, k).to_string(),
                    t.rhs(m, k).to_string()});
          break;
        }
      }
    }
    if (valid == 0) rep.verdict = Verdict::window_exhausted;
  } catch (const Error& e) {
    rep = detail::evaluation_failure(id, e.what());
    rep.window = static_cast<int>(n);
  }
  rep.millis = clock.millis();
  return rep;
}

}  // namespace sydy
