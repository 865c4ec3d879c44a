#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sydy/grade.hpp"

namespace sydy {

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class AtomKind { k1, k2, e, f, X, K, H, E, F, l11, l12, l21, l22 };
enum class AtomSign { none, plus, minus };

struct AtomInfo {
  AtomKind kind;
  const char* name;
  Parity parity;
  bool sign_required;
};

inline constexpr AtomInfo kAtomTable[] = {
    {AtomKind::k1, "k1", Parity::even, true},   {AtomKind::k2, "k2", Parity::even, true},
    {AtomKind::e, "e", Parity::odd, true},      {AtomKind::f, "f", Parity::odd, true},
    {AtomKind::X, "X", Parity::odd, true},      {AtomKind::K, "K", Parity::even, true},
    {AtomKind::H, "H", Parity::even, true},     {AtomKind::E, "E", Parity::odd, false},
    {AtomKind::F, "F", Parity::odd, false},     {AtomKind::l11, "l11", Parity::even, true},
    {AtomKind::l12, "l12", Parity::odd, true},  {AtomKind::l21, "l21", Parity::odd, true},
    {AtomKind::l22, "l22", Parity::even, true},
};

inline const AtomInfo& atom_info(AtomKind k) {
  for (const auto& a : kAtomTable)
    if (a.kind == k) return a;
  return kAtomTable[0];
}

inline std::optional<AtomKind> atom_from_name(std::string_view s) {
  for (const auto& a : kAtomTable)
    if (s == a.name) return a.kind;
  return std::nullopt;
}

/// Spectral argument var + shift, the shift a polynomial in ħ and c.
struct Arg {
  Var var = Var::u;
  Polynomial shift;

  RationalFunction value() const { return RationalFunction(Polynomial::var(var) + shift); }
  friend bool operator==(const Arg&, const Arg&) = default;
};

/// u ± ħc/4.
inline Polynomial central_shift(int sign) {
  return Polynomial::monomial(Monomial::of(Var::hbar) * Monomial::of(Var::c), Rational(sign, 4));
}

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct ScalarNode {
  RationalFunction value;
};
struct AtomNode {
  AtomKind kind;
  AtomSign sign;
  Arg arg;
};
struct DeltaNode {
  Arg a;
  Arg b;
};
/// Signed terms; the first sign is always +1.
struct SumNode {
  std::vector<std::pair<int, NodePtr>> terms;
};
struct NegNode {
  NodePtr x;
};
/// Ordered product; a scalar factor, if any, comes first.
struct MulNode {
  std::vector<NodePtr> factors;
};
struct BracketNode {
  NodePtr a;
  NodePtr b;
  bool anti = false;
};
struct InverseNode {
  NodePtr x;
};

struct Node {
  std::variant<ScalarNode, AtomNode, DeltaNode, SumNode, NegNode, MulNode, BracketNode, InverseNode> v;
  SourceSpan span;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v);
  }
};

struct Relation {
  NodePtr lhs;
  NodePtr rhs;
};

inline NodePtr make_node(auto payload, SourceSpan span = {}) {
  return std::make_shared<const Node>(Node{std::move(payload), span});
}

/// Structural equality; spans are ignored.
inline bool equal(const NodePtr& a, const NodePtr& b) {
  if (a->v.index() != b->v.index()) return false;
  if (auto x = a->as<ScalarNode>()) return x->value == b->as<ScalarNode>()->value;
  if (auto x = a->as<AtomNode>()) {
    auto y = b->as<AtomNode>();
    return x->kind == y->kind && x->sign == y->sign && x->arg == y->arg;
  }
  if (auto x = a->as<DeltaNode>()) {
    auto y = b->as<DeltaNode>();
    return x->a == y->a && x->b == y->b;
  }
  if (auto x = a->as<SumNode>()) {
    auto y = b->as<SumNode>();
    if (x->terms.size() != y->terms.size()) return false;
    for (std::size_t i = 0; i < x->terms.size(); ++i)
      if (x->terms[i].first != y->terms[i].first || !equal(x->terms[i].second, y->terms[i].second)) return false;
    return true;
  }
  if (auto x = a->as<NegNode>()) return equal(x->x, b->as<NegNode>()->x);
  if (auto x = a->as<MulNode>()) {
    auto y = b->as<MulNode>();
    if (x->factors.size() != y->factors.size()) return false;
    for (std::size_t i = 0; i < x->factors.size(); ++i)
      if (!equal(x->factors[i], y->factors[i])) return false;
    return true;
  }
  if (auto x = a->as<BracketNode>()) {
    auto y = b->as<BracketNode>();
    return x->anti == y->anti && equal(x->a, y->a) && equal(x->b, y->b);
  }
  return equal(a->as<InverseNode>()->x, b->as<InverseNode>()->x);
}

inline bool equal(const Relation& a, const Relation& b) { return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs); }

/// Parity of a homogeneous expression; nullopt for inhomogeneous sums. Scalars are even.
inline std::optional<Parity> parity_of(const NodePtr& n) {
  if (n->as<ScalarNode>() || n->as<DeltaNode>()) return Parity::even;
  if (auto a = n->as<AtomNode>()) return atom_info(a->kind).parity;
  if (auto s = n->as<SumNode>()) {
    std::optional<Parity> p;
    for (const auto& [sign, t] : s->terms) {
      auto q = parity_of(t);
      if (!q) return std::nullopt;
      // scalar terms carry no operator content; they are compatible with even sums only
      if (p && *p != *q) return std::nullopt;
      p = q;
    }
    return p;
  }
  if (auto x = n->as<NegNode>()) return parity_of(x->x);
  if (auto m = n->as<MulNode>()) {
    Parity p = Parity::even;
    for (const auto& f : m->factors) {
      auto q = parity_of(f);
      if (!q) return std::nullopt;
      p = p + *q;
    }
    return p;
  }
  if (auto b = n->as<BracketNode>()) {
    auto p = parity_of(b->a);
    auto q = parity_of(b->b);
    if (!p || !q) return std::nullopt;
    return *p + *q;
  }
  return parity_of(n->as<InverseNode>()->x);
}

/// Visits every atom and delta of an expression.
template <class F>
void for_each_leaf(const NodePtr& n, F&& f) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, AtomNode> || std::is_same_v<T, DeltaNode>) {
          f(*n);
        } else if constexpr (std::is_same_v<T, SumNode>) {
          for (const auto& t : x.terms) for_each_leaf(t.second, f);
        } else if constexpr (std::is_same_v<T, NegNode> || std::is_same_v<T, InverseNode>) {
          for_each_leaf(x.x, f);
        } else if constexpr (std::is_same_v<T, MulNode>) {
          for (const auto& t : x.factors) for_each_leaf(t, f);
        } else if constexpr (std::is_same_v<T, BracketNode>) {
          for_each_leaf(x.a, f);
          for_each_leaf(x.b, f);
        }
      },
      n->v);
}

}  // namespace sydy
