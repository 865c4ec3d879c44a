#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sydy/relation_ast.hpp"

namespace sydy {

class ParseError : public Error {
 public:
  ParseError(std::string message, SourceSpan span, std::vector<std::string> expected = {})
      : Error(format(message, span)), message_(std::move(message)), span_(span), expected_(std::move(expected)) {}

  const std::string& message() const { return message_; }
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& m, const SourceSpan& s) {
    return std::to_string(s.line) + ":" + std::to_string(s.column) + ": " + m;
  }

  std::string message_;
  SourceSpan span_;
  std::vector<std::string> expected_;
};

namespace dsl {

enum class Tok { ident, integer, lparen, rparen, lbracket, rbracket, lbrace, rbrace, comma, plus, minus, star, slash, caret, equals, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline std::string describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::integer: return "integer";
    case Tok::lparen: return "(";
    case Tok::rparen: return ")";
    case Tok::lbracket: return "[";
    case Tok::rbracket: return "]";
    case Tok::lbrace: return "{";
    case Tok::rbrace: return "}";
    case Tok::comma: return ",";
    case Tok::plus: return "+";
    case Tok::minus: return "-";
    case Tok::star: return "*";
    case Tok::slash: return "/";
    case Tok::caret: return "^";
    case Tok::equals: return "=";
    case Tok::end: return "end of input";
  }
  return "?";
}

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto span = [&](std::size_t start, std::size_t len, std::size_t c) { return SourceSpan{start, start + len, line, c}; };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    const std::size_t start = i;
    const std::size_t c0 = col;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      col += i - start;
      out.push_back({Tok::ident, std::string(text.substr(start, i - start)), span(start, i - start, c0)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      col += i - start;
      out.push_back({Tok::integer, std::string(text.substr(start, i - start)), span(start, i - start, c0)});
      continue;
    }
    Tok k;
    switch (ch) {
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case '[': k = Tok::lbracket; break;
      case ']': k = Tok::rbracket; break;
      case '{': k = Tok::lbrace; break;
      case '}': k = Tok::rbrace; break;
      case ',': k = Tok::comma; break;
      case '+': k = Tok::plus; break;
      case '-': k = Tok::minus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '=': k = Tok::equals; break;
      default: {
        // one code point, so spans stay on character boundaries for UTF-8 input
        std::size_t len = 1;
        const auto b = static_cast<unsigned char>(ch);
        if (b >= 0xF0) len = 4;
        else if (b >= 0xE0) len = 3;
        else if (b >= 0xC0) len = 2;
        len = std::min(len, text.size() - i);
        throw ParseError("unexpected character '" + std::string(text.substr(i, len)) + "'", span(start, len, c0));
      }
    }
    ++i;
    ++col;
    out.push_back({k, std::string(1, ch), span(start, 1, c0)});
  }
  out.push_back({Tok::end, "", SourceSpan{text.size(), text.size(), line, col}});
  return out;
}

// ---- normalizing builders: scalar subexpressions fold into one ScalarNode ----

inline bool is_scalar(const NodePtr& n) { return n->as<ScalarNode>() != nullptr; }
inline const RationalFunction& scalar_value(const NodePtr& n) { return n->as<ScalarNode>()->value; }
inline NodePtr scalar(RationalFunction x, SourceSpan s = {}) { return make_node(ScalarNode{std::move(x)}, s); }

inline NodePtr make_neg(const NodePtr& x, SourceSpan s = {}) {
  if (is_scalar(x)) return scalar(-scalar_value(x), s);
  if (auto n = x->as<NegNode>()) return n->x;
  if (auto m = x->as<MulNode>(); m && is_scalar(m->factors.front())) {
    MulNode r = *m;
    r.factors.front() = scalar(-scalar_value(m->factors.front()), m->factors.front()->span);
    return make_node(std::move(r), s);
  }
  return make_node(NegNode{x}, s);
}

inline NodePtr make_mul(const std::vector<NodePtr>& factors, SourceSpan s = {}) {
  RationalFunction coef(1);
  bool had_scalar = false;
  std::vector<NodePtr> rest;
  for (const auto& f : factors) {
    if (auto m = f->as<MulNode>()) {
      for (const auto& g : m->factors) {
        if (is_scalar(g)) {
          coef *= scalar_value(g);
          had_scalar = true;
        } else {
          rest.push_back(g);
        }
      }
    } else if (is_scalar(f)) {
      coef *= scalar_value(f);
      had_scalar = true;
    } else {
      rest.push_back(f);
    }
  }
  if (rest.empty() || coef.is_zero()) return scalar(coef, s);
  if (coef.is_one() || !had_scalar) {
    if (rest.size() == 1) return rest.front();
    return make_node(MulNode{std::move(rest)}, s);
  }
  rest.insert(rest.begin(), scalar(coef));
  return make_node(MulNode{std::move(rest)}, s);
}

inline NodePtr make_sum(const std::vector<std::pair<int, NodePtr>>& terms, SourceSpan s = {}) {
  std::vector<std::pair<int, NodePtr>> flat;
  std::optional<std::size_t> scalar_slot;
  RationalFunction scalar_total;
  for (const auto& [sign, t] : terms) {
    std::vector<std::pair<int, NodePtr>> parts;
    if (auto sum = t->as<SumNode>()) {
      for (const auto& [s2, t2] : sum->terms) parts.emplace_back(sign * s2, t2);
    } else {
      parts.emplace_back(sign, t);
    }
    for (auto& [sg, node] : parts) {
      if (is_scalar(node)) {
        scalar_total += sg > 0 ? scalar_value(node) : -scalar_value(node);
        if (!scalar_slot) {
          scalar_slot = flat.size();
          flat.emplace_back(1, nullptr);
        }
      } else {
        flat.emplace_back(sg, node);
      }
    }
  }
  if (scalar_slot) {
    if (scalar_total.is_zero()) {
      flat.erase(flat.begin() + static_cast<long>(*scalar_slot));
    } else {
      flat[*scalar_slot].second = scalar(scalar_total);
    }
  }
  if (flat.empty()) return scalar(RationalFunction(), s);
  if (flat.front().first < 0) flat.front() = {1, make_neg(flat.front().second)};
  if (flat.size() == 1) return flat.front().second;
  return make_node(SumNode{std::move(flat)}, s);
}

inline NodePtr make_inverse(const NodePtr& x, SourceSpan s = {}) {
  if (is_scalar(x)) {
    if (scalar_value(x).is_zero()) throw ParseError("inverse of zero", s);
    return scalar(scalar_value(x).inverse(), s);
  }
  return make_node(InverseNode{x}, s);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Relation relation() {
    NodePtr lhs = expr();
    expect(Tok::equals, {"=", "+", "-", "*", "/"});
    NodePtr rhs = expr();
    expect(Tok::end, {"end of input", "+", "-", "*", "/"});
    return {lhs, rhs};
  }

  NodePtr expression() {
    NodePtr e = expr();
    expect(Tok::end, {"end of input", "+", "-", "*", "/"});
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return tokens_[std::min(pos_ + k, tokens_.size() - 1)]; }
  const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
    const Token& t = peek();
    const std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.span, std::move(expected));
  }

  const Token& expect(Tok k, std::vector<std::string> expected) {
    if (!at(k)) fail("expected '" + describe(k) + "'", std::move(expected));
    return next();
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.start, b.end, a.line, a.column}; }
  SourceSpan from(const SourceSpan& a) const { return join(a, tokens_[pos_ ? pos_ - 1 : 0].span); }

  NodePtr expr() {
    const SourceSpan s0 = peek().span;
    std::vector<std::pair<int, NodePtr>> terms;
    terms.emplace_back(1, term());
    while (at(Tok::plus) || at(Tok::minus)) {
      const int sign = next().kind == Tok::plus ? 1 : -1;
      terms.emplace_back(sign, term());
    }
    if (terms.size() == 1) return terms.front().second;
    return make_sum(terms, from(s0));
  }

  NodePtr term() {
    const SourceSpan s0 = peek().span;
    std::vector<NodePtr> factors{unary()};
    while (at(Tok::star) || at(Tok::slash)) {
      const bool divide = next().kind == Tok::slash;
      const SourceSpan fs = peek().span;
      NodePtr f = unary();
      if (divide) {
        if (!is_scalar(f)) throw ParseError("division is only defined by scalars", from(fs));
        if (scalar_value(f).is_zero()) throw ParseError("division by zero", from(fs));
        f = scalar(scalar_value(f).inverse(), f->span);
      }
      factors.push_back(f);
    }
    if (factors.size() == 1) return factors.front();
    return make_mul(factors, from(s0));
  }

  NodePtr unary() {
    if (at(Tok::minus)) {
      const SourceSpan s0 = next().span;
      NodePtr x = unary();
      return make_neg(x, from(s0));
    }
    return power();
  }

  NodePtr power() {
    const SourceSpan s0 = peek().span;
    NodePtr base = primary();
    if (!at(Tok::caret)) return base;
    next();
    const Token& e = expect(Tok::integer, {"integer"});
    if (!is_scalar(base)) throw ParseError("powers are only defined for scalars", from(s0));
    return scalar(scalar_value(base).pow(std::stoi(e.text)), from(s0));
  }

  NodePtr primary() {
    const Token& t = peek();
    const SourceSpan s0 = t.span;
    switch (t.kind) {
      case Tok::integer:
        next();
        return scalar(RationalFunction(Rational(mpz_class(t.text))), s0);
      case Tok::lparen: {
        next();
        NodePtr e = expr();
        expect(Tok::rparen, {")", "+", "-", "*", "/"});
        return e;
      }
      case Tok::lbracket:
      case Tok::lbrace: {
        const bool anti = t.kind == Tok::lbrace;
        next();
        NodePtr a = expr();
        expect(Tok::comma, {",", "+", "-", "*", "/"});
        NodePtr b = expr();
        expect(anti ? Tok::rbrace : Tok::rbracket, {anti ? "}" : "]", "+", "-", "*", "/"});
        if (anti) {
          auto pa = parity_of(a);
          auto pb = parity_of(b);
          if (pa != Parity::odd || pb != Parity::odd)
            throw ParseError("parity error: anticommutator needs two odd operands", from(s0));
        }
        return make_node(BracketNode{a, b, anti}, from(s0));
      }
      case Tok::ident: return identifier();
      default: break;
    }
    fail("expected an operand", {"integer", "identifier", "(", "[", "{", "-"});
  }

  NodePtr identifier() {
    const Token t = next();
    const SourceSpan s0 = t.span;
    if (t.text == "inv") {
      expect(Tok::lparen, {"("});
      NodePtr x = expr();
      expect(Tok::rparen, {")", "+", "-", "*", "/"});
      return make_inverse(x, from(s0));
    }
    if (t.text == "delta") {
      expect(Tok::lparen, {"("});
      Arg a = arg();
      expect(Tok::comma, {",", "+", "-"});
      Arg b = arg();
      expect(Tok::rparen, {")", "+", "-"});
      if (a.var == b.var) throw ParseError("delta needs two distinct spectral variables", from(s0));
      return make_node(DeltaNode{a, b}, from(s0));
    }
    if (t.text == "hbar") return scalar(rf(Var::hbar), s0);
    if (t.text == "c") return scalar(rf(Var::c), s0);
    if (t.text == "u") return scalar(rf(Var::u), s0);
    if (t.text == "v") return scalar(rf(Var::v), s0);
    auto kind = atom_from_name(t.text);
    if (!kind) throw ParseError("unknown atom '" + t.text + "'", s0);
    AtomSign sign = AtomSign::none;
    if (at(Tok::plus) || at(Tok::minus)) {
      sign = next().kind == Tok::plus ? AtomSign::plus : AtomSign::minus;
    } else if (atom_info(*kind).sign_required) {
      fail("atom '" + t.text + "' needs a sign", {"+", "-"});
    }
    expect(Tok::lparen, sign == AtomSign::none ? std::vector<std::string>{"(", "+", "-"} : std::vector<std::string>{"("});
    Arg a = arg();
    expect(Tok::rparen, {")", "+", "-"});
    return make_node(AtomNode{*kind, sign, a}, from(s0));
  }

  Arg arg() {
    const Token& t = peek();
    if (t.kind != Tok::ident || (t.text != "u" && t.text != "v"))
      fail("expected a spectral variable", {"u", "v"});
    next();
    Arg a{t.text == "u" ? Var::u : Var::v, Polynomial()};
    while (at(Tok::plus) || at(Tok::minus)) {
      const int sign = next().kind == Tok::plus ? 1 : -1;
      const Token& n = peek();
      const bool explicit_term = n.kind == Tok::integer || (n.kind == Tok::ident && (n.text == "hbar" || n.text == "c"));
      a.shift += explicit_term ? shift_term().scaled(sign) : central_shift(sign);
    }
    return a;
  }

  /// sfactor (('*'|'/') sfactor)* with sfactor ∈ {integer, hbar, c}; divisors are integers.
  Polynomial shift_term() {
    Polynomial p = shift_factor();
    while (at(Tok::star) || at(Tok::slash)) {
      if (next().kind == Tok::slash) {
        const Token& d = expect(Tok::integer, {"integer"});
        const mpz_class den(d.text);
        if (den == 0) throw ParseError("division by zero", d.span);
        p = p.scaled(Rational(mpz_class(1), den));
      } else {
        p *= shift_factor();
      }
    }
    return p;
  }

  Polynomial shift_factor() {
    const Token& t = peek();
    if (t.kind == Tok::integer) {
      next();
      return Polynomial(Rational(mpz_class(t.text)));
    }
    if (t.kind == Tok::ident && t.text == "hbar") {
      next();
      return Polynomial::var(Var::hbar);
    }
    if (t.kind == Tok::ident && t.text == "c") {
      next();
      return Polynomial::var(Var::c);
    }
    fail("expected a shift factor", {"integer", "hbar", "c"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace dsl

inline Relation parse_relation(std::string_view text) { return dsl::Parser(text).relation(); }
inline NodePtr parse_expression(std::string_view text) { return dsl::Parser(text).expression(); }

namespace dsl {

inline std::string render_arg(const Arg& a) {
  std::string s(var_name(a.var, Style::dsl));
  if (a.shift.is_zero()) return s;
  if (a.shift == central_shift(1)) return s + "+";
  if (a.shift == central_shift(-1)) return s + "-";
  for (const auto& t : a.shift.terms()) {
    Rational c = t.coef;
    s += c < 0 ? "-" : "+";
    if (c < 0) c = -c;
    s += Polynomial::monomial(t.mono, c).to_string(Style::dsl);
  }
  return s;
}

inline bool simple_scalar(const RationalFunction& x) {
  if (!x.is_polynomial()) return false;
  const Polynomial& p = x.numerator();
  if (p.is_constant()) return p.constant_value() >= 0 && p.constant_value().get_den() == 1;
  return p.size() == 1 && p.leading_coefficient() == 1 && p.leading_term().mono.degree() == 1;
}

inline std::string render_scalar(const RationalFunction& x) {
  if (x.is_constant() && x.constant_value().get_den() == 1) return x.constant_value().get_str();
  if (simple_scalar(x)) return x.numerator().to_string(Style::dsl);
  std::string s = "(" + x.numerator().to_string(Style::dsl) + ")";
  if (!x.is_polynomial()) s += "/(" + x.denominator().to_string(Style::dsl) + ")";
  return s;
}

inline std::string render(const NodePtr& n);

inline std::string render_factor(const NodePtr& n) {
  if (n->as<SumNode>() || n->as<MulNode>()) return "(" + render(n) + ")";
  if (auto s = n->as<ScalarNode>(); s && !simple_scalar(s->value)) return "(" + render(n) + ")";
  return render(n);
}

inline std::string render(const NodePtr& n) {
  if (auto x = n->as<ScalarNode>()) return render_scalar(x->value);
  if (auto x = n->as<AtomNode>()) {
    std::string s = atom_info(x->kind).name;
    if (x->sign == AtomSign::plus) s += "+";
    if (x->sign == AtomSign::minus) s += "-";
    return s + "(" + render_arg(x->arg) + ")";
  }
  if (auto x = n->as<DeltaNode>()) return "delta(" + render_arg(x->a) + ", " + render_arg(x->b) + ")";
  if (auto x = n->as<SumNode>()) {
    std::string s;
    for (std::size_t i = 0; i < x->terms.size(); ++i) {
      const auto& [sign, t] = x->terms[i];
      if (i) s += sign > 0 ? " + " : " - ";
      s += t->as<SumNode>() ? "(" + render(t) + ")" : render(t);
    }
    return s;
  }
  if (auto x = n->as<NegNode>()) return "-" + render_factor(x->x);
  if (auto x = n->as<MulNode>()) {
    std::string s;
    for (std::size_t i = 0; i < x->factors.size(); ++i) {
      if (i) s += "*";
      s += render_factor(x->factors[i]);
    }
    return s;
  }
  if (auto x = n->as<BracketNode>()) {
    return std::string(x->anti ? "{" : "[") + render(x->a) + ", " + render(x->b) + (x->anti ? "}" : "]");
  }
  return "inv(" + render(n->as<InverseNode>()->x) + ")";
}

}  // namespace dsl

inline std::string render_expression(const NodePtr& n) { return dsl::render(n); }
inline std::string render_relation(const Relation& r) { return dsl::render(r.lhs) + " = " + dsl::render(r.rhs); }

}  // namespace sydy
