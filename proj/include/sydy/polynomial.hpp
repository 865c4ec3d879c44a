#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sydy {

using Rational = mpq_class;

/// Indeterminates in decreasing significance for the monomial order.
enum class Var : std::uint8_t { u, v, w, w1, w2, c, hbar };

inline constexpr std::size_t kVarCount = 7;
inline constexpr std::array<Var, kVarCount> kAllVars{Var::u,  Var::v, Var::w,   Var::w1,
                                                     Var::w2, Var::c, Var::hbar};

/// Rendering flavour: `report` writes ħ as "h", `dsl` writes it as "hbar".
enum class Style { report, dsl };

inline std::string_view var_name(Var x, Style style = Style::report) {
  switch (x) {
    case Var::u: return "u";
    case Var::v: return "v";
    case Var::w: return "w";
    case Var::w1: return "w1";
    case Var::w2: return "w2";
    case Var::c: return "c";
    case Var::hbar: return style == Style::dsl ? "hbar" : "h";
  }
  return "?";
}

inline std::optional<Var> var_from_name(std::string_view s) {
  for (Var x : kAllVars) {
    if (var_name(x, Style::report) == s || var_name(x, Style::dsl) == s) return x;
  }
  return std::nullopt;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroDivisionError : public Error {
 public:
  using Error::Error;
};

class Monomial {
 public:
  using Exponents = std::array<std::uint16_t, kVarCount>;

  constexpr Monomial() = default;
  explicit constexpr Monomial(const Exponents& e) : exp_(e) {}

  static Monomial of(Var x, unsigned e = 1) {
    Monomial m;
    m.exp_[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(e);
    return m;
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto e : exp_) d += e;
    return d;
  }
  unsigned degree(Var x) const { return exp_[static_cast<std::size_t>(x)]; }
  bool is_one() const { return degree() == 0; }
  const Exponents& exponents() const { return exp_; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kVarCount; ++i) r.exp_[i] = exp_[i] + o.exp_[i];
    return r;
  }

  /// True when this monomial divides `o`.
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (exp_[i] > o.exp_[i]) return false;
    return true;
  }

  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kVarCount; ++i) r.exp_[i] = exp_[i] - o.exp_[i];
    return r;
  }

  Monomial without(Var x) const {
    Monomial r = *this;
    r.exp_[static_cast<std::size_t>(x)] = 0;
    return r;
  }

  static Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kVarCount; ++i) r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  /// Graded lexicographic: total degree first, then exponents from u down to ħ.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    for (std::size_t i = 0; i < kVarCount; ++i)
      if (auto c = a.exp_[i] <=> b.exp_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string to_string(Style style = Style::report) const {
    std::string s;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (exp_[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += var_name(kAllVars[i], style);
      if (exp_[i] > 1) s += '^' + std::to_string(exp_[i]);
    }
    return s;
  }

 private:
  Exponents exp_{};
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse multivariate polynomial over Q; terms sorted by decreasing monomial.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, Rational(c)});
  }
  Polynomial(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({Monomial{}, c});
  }

  static Polynomial var(Var x) { return monomial(Monomial::of(x), 1); }
  static Polynomial monomial(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
  }
  static Polynomial from_terms(std::vector<Term> terms) {
    Polynomial p;
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }
  Rational constant_value() const {
    if (terms_.empty() || !terms_.back().mono.is_one()) return 0;
    return terms_.back().coef;
  }
  const Term& leading_term() const { return terms_.front(); }
  const Rational& leading_coefficient() const { return terms_.front().coef; }

  unsigned degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }
  unsigned degree(Var x) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree(x));
    return d;
  }
  bool contains(Var x) const {
    for (const auto& t : terms_)
      if (t.mono.degree(x) > 0) return true;
    return false;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return b.scaled(a.terms_[0].coef);
    if (b.is_constant()) return a.scaled(b.terms_[0].coef);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    std::vector<Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coef * y.coef});
    return from_terms(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial scaled(const Rational& c) const {
    if (c == 0) return {};
    Polynomial r = *this;
    if (c != 1)
      for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  Polynomial times_term(const Term& t) const {
    if (t.coef == 0) return {};
    Polynomial r = *this;
    for (auto& x : r.terms_) {
      x.mono = x.mono * t.mono;
      x.coef *= t.coef;
    }
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r(1);
    Polynomial b = *this;
    while (e) {
      if (e & 1U) r *= b;
      e >>= 1U;
      if (e) b *= b;
    }
    return r;
  }

  /// Leading coefficient scaled to 1; zero stays zero.
  Polynomial monic() const {
    if (is_zero() || leading_coefficient() == 1) return *this;
    return scaled(Rational(1) / leading_coefficient());
  }

  /// Coefficients with respect to x: result[k] multiplies x^k and is free of x.
  std::vector<Polynomial> coefficients_in(Var x) const {
    std::vector<Polynomial> out(degree(x) + 1);
    std::vector<std::vector<Term>> buckets(out.size());
    for (const auto& t : terms_) buckets[t.mono.degree(x)].push_back({t.mono.without(x), t.coef});
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = from_terms(std::move(buckets[k]));
    return out;
  }

  static Polynomial from_coefficients_in(Var x, const std::vector<Polynomial>& coeffs) {
    std::vector<Term> out;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      for (const auto& t : coeffs[k].terms_) out.push_back({t.mono * Monomial::of(x, static_cast<unsigned>(k)), t.coef});
    return from_terms(std::move(out));
  }

  /// Exact quotient a / b when b divides a, otherwise nullopt.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw ZeroDivisionError("polynomial division by zero");
    if (a.is_zero()) return Polynomial{};
    if (b.is_constant()) return a.scaled(Rational(1) / b.terms_[0].coef);
    for (Var x : kAllVars)
      if (a.degree(x) < b.degree(x)) return std::nullopt;
    std::vector<Term> q;
    Polynomial r = a;
    const Term& lb = b.leading_term();
    while (!r.is_zero()) {
      const Term& lr = r.leading_term();
      if (!lb.mono.divides(lr.mono)) return std::nullopt;
      Term t{lr.mono / lb.mono, lr.coef / lb.coef};
      r -= b.times_term(t);
      q.push_back(std::move(t));
    }
    return from_terms(std::move(q));
  }

  std::string to_string(Style style = Style::report) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coef;
      if (first) {
        if (c < 0) s += '-';
      } else {
        s += c < 0 ? " - " : " + ";
      }
      first = false;
      if (c < 0) c = -c;
      const bool unit = c == 1;
      if (t.mono.is_one()) {
        s += c.get_str();
      } else if (unit) {
        s += t.mono.to_string(style);
      } else if (c.get_den() == 1) {
        s += c.get_str() + "*" + t.mono.to_string(style);
      } else {
        if (c.get_num() != 1) s += c.get_num().get_str() + "*";
        s += t.mono.to_string(style) + "/" + c.get_den().get_str();
      }
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.mono > y.mono; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coef += t.coef;
      } else {
        if (!out.empty() && out.back().coef == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coef == 0) out.pop_back();
    terms_ = std::move(out);
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool negate_b) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].mono > b.terms_[j].mono)) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.terms_.size() || b.terms_[j].mono > a.terms_[i].mono) {
        r.terms_.push_back(b.terms_[j]);
        if (negate_b) r.terms_.back().coef = -r.terms_.back().coef;
        ++j;
      } else {
        Rational c = negate_b ? Rational(a.terms_[i].coef - b.terms_[j].coef) : Rational(a.terms_[i].coef + b.terms_[j].coef);
        if (c != 0) r.terms_.push_back({a.terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

namespace detail {

inline Monomial monomial_content(const Polynomial& p) {
  Monomial g = p.terms().front().mono;
  for (const auto& t : p.terms()) g = Monomial::gcd(g, t.mono);
  return g;
}

inline std::optional<Var> first_var(const Polynomial& a, const Polynomial& b) {
  for (Var x : kAllVars)
    if (a.contains(x) || b.contains(x)) return x;
  return std::nullopt;
}

using Univariate = std::vector<Polynomial>;

inline void trim(Univariate& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Pseudo-remainder of a by b, both univariate in the main variable.
inline Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const std::size_t n = b.size() - 1;
  const Polynomial& lb = b.back();
  trim(a);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Polynomial la = a.back();
    for (auto& c : a) c = c * lb;
    for (std::size_t k = 0; k <= n; ++k) a[k + shift] -= la * b[k];
    trim(a);
  }
  return a;
}

/// Scales the coefficient list to integer coefficients with no common factor.
inline void make_integer_primitive(Univariate& p) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& c : p)
    for (const auto& t : c.terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
    }
  if (num_gcd == 0 || (num_gcd == 1 && den_lcm == 1)) return;
  const Rational s(den_lcm, num_gcd);
  for (auto& c : p) c = c.scaled(s);
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Gcd of the coefficients of p with respect to x, made monic.
inline Polynomial content_in(const Polynomial& p, Var x) {
  Polynomial g;
  for (const auto& c : p.coefficients_in(x)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.size() == 1 || b.size() == 1) {
    Monomial g = Monomial::gcd(detail::monomial_content(a), detail::monomial_content(b));
    return Polynomial::monomial(g, 1);
  }
  if (a == b) return a.monic();
  if (b.size() <= a.size()) {
    if (Polynomial::divide_exact(a, b)) return b.monic();
  } else if (Polynomial::divide_exact(b, a)) {
    return a.monic();
  }
  const Var x = *detail::first_var(a, b);
  if (!a.contains(x)) return gcd(a, content_in(b, x));
  if (!b.contains(x)) return gcd(content_in(a, x), b);

  const Polynomial ca = content_in(a, x);
  const Polynomial cb = content_in(b, x);
  const Polynomial g0 = gcd(ca, cb);
  detail::Univariate pa = (*Polynomial::divide_exact(a, ca)).coefficients_in(x);
  detail::Univariate pb = (*Polynomial::divide_exact(b, cb)).coefficients_in(x);
  if (pa.size() < pb.size()) std::swap(pa, pb);
  detail::make_integer_primitive(pa);
  detail::make_integer_primitive(pb);
  while (true) {
    detail::Univariate r = detail::pseudo_remainder(pa, pb);
    if (r.empty()) break;
    if (r.size() == 1) {
      pb = {Polynomial(1)};
      break;
    }
    Polynomial rc;
    for (const auto& c : r) {
      if (c.is_zero()) continue;
      rc = gcd(rc, c);
      if (rc.is_one()) break;
    }
    if (!rc.is_one())
      for (auto& c : r) c = *Polynomial::divide_exact(c, rc);
    detail::make_integer_primitive(r);
    pa = std::move(pb);
    pb = std::move(r);
  }
  return (g0 * Polynomial::from_coefficients_in(x, pb)).monic();
}

}  // namespace sydy
