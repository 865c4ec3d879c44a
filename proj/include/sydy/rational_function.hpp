#pragma once

#include <map>
#include <string>
#include <utility>

#include "sydy/polynomial.hpp"

namespace sydy {

class DegenerateSubstitution : public Error {
 public:
  using Error::Error;
};

/// Reduced quotient of polynomials with monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}                 // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : num_(c), den_(1) {}      // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial p) : num_(std::move(p)), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RationalFunction var(Var x) { return RationalFunction(Polynomial::var(x)); }
  /// Caller guarantees gcd(num, den) = 1.
  static RationalFunction from_coprime(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw ZeroDivisionError("zero denominator");
    return normalized_sign(std::move(num), std::move(den));
  }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  Rational constant_value() const { return num_.constant_value(); }
  bool contains(Var x) const { return num_.contains(x) || den_.contains(x); }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalFunction operator-() const { return trusted(-num_, den_); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) { return add(a, b, false); }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return add(a, b, true); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.is_constant()) return trusted(b.num_.scaled(a.num_.constant_value()), b.den_);
    if (b.is_constant()) return trusted(a.num_.scaled(b.num_.constant_value()), a.den_);
    if (a.den_.is_one() && b.den_.is_one()) return trusted(a.num_ * b.num_, Polynomial(1));
    const Polynomial g1 = gcd(a.num_, b.den_);
    const Polynomial g2 = gcd(b.num_, a.den_);
    Polynomial n = div(a.num_, g1) * div(b.num_, g2);
    Polynomial d = div(a.den_, g2) * div(b.den_, g1);
    return normalized_sign(std::move(n), std::move(d));
  }

  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }
  RationalFunction& operator/=(const RationalFunction& b) { return *this = *this / b; }

  RationalFunction inverse() const {
    if (is_zero()) throw ZeroDivisionError("division by the zero rational function");
    return normalized_sign(den_, num_);
  }

  RationalFunction pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    return trusted(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
  }

  /// Simultaneous substitution of indeterminates by rational functions.
  RationalFunction substitute(const std::map<Var, RationalFunction>& bindings) const {
    auto [nn, nd] = substitute_poly(num_, bindings);
    auto [dn, dd] = substitute_poly(den_, bindings);
    if (dn.is_zero()) throw DegenerateSubstitution("denominator vanishes identically after substitution");
    return RationalFunction(nn * dd, nd * dn);
  }

  RationalFunction substitute(Var x, const RationalFunction& value) const { return substitute({{x, value}}); }

  std::string to_string(Style style = Style::report) const {
    if (den_.is_one()) return num_.to_string(style);
    std::string n = num_.to_string(style);
    std::string d = den_.to_string(style);
    if (num_.size() > 1) n = "(" + n + ")";
    if (den_.size() > 1) d = "(" + d + ")";
    return n + "/" + d;
  }

 private:
  struct Trusted {};
  RationalFunction(Polynomial num, Polynomial den, Trusted) : num_(std::move(num)), den_(std::move(den)) {}

  static RationalFunction trusted(Polynomial num, Polynomial den) {
    if (num.is_zero()) return {};
    return {std::move(num), std::move(den), Trusted{}};
  }

  static Polynomial div(const Polynomial& a, const Polynomial& g) {
    if (g.is_one()) return a;
    return *Polynomial::divide_exact(a, g);
  }

  /// Coprime inputs; only the denominator scale needs fixing.
  static RationalFunction normalized_sign(Polynomial num, Polynomial den) {
    if (num.is_zero()) return {};
    const Rational lc = den.leading_coefficient();
    if (lc != 1) {
      const Rational s = Rational(1) / lc;
      num = num.scaled(s);
      den = den.scaled(s);
    }
    return trusted(std::move(num), std::move(den));
  }

  void reduce() {
    if (den_.is_zero()) throw ZeroDivisionError("zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    const Polynomial g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = div(num_, g);
      den_ = div(den_, g);
    }
    *this = normalized_sign(std::move(num_), std::move(den_));
  }

  static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool sub) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return sub ? -b : b;
    if (a.den_.is_one() && b.den_.is_one()) return trusted(sub ? a.num_ - b.num_ : a.num_ + b.num_, Polynomial(1));
    if (a.den_ == b.den_) {
      Polynomial n = sub ? a.num_ - b.num_ : a.num_ + b.num_;
      if (n.is_zero()) return {};
      const Polynomial g = gcd(n, a.den_);
      return normalized_sign(div(n, g), div(a.den_, g));
    }
    if (a.den_.is_one()) {
      Polynomial n = a.num_ * b.den_ + (sub ? -b.num_ : b.num_);
      return trusted(std::move(n), b.den_);
    }
    if (b.den_.is_one()) {
      Polynomial n = a.num_ + (sub ? -b.num_ : b.num_) * a.den_;
      return trusted(std::move(n), a.den_);
    }
    const Polynomial g = gcd(a.den_, b.den_);
    const Polynomial ad = div(a.den_, g);
    const Polynomial bd = div(b.den_, g);
    Polynomial n = a.num_ * bd + (sub ? -b.num_ : b.num_) * ad;
    if (n.is_zero()) return {};
    Polynomial d = a.den_ * bd;
    if (!g.is_one()) {
      const Polynomial g2 = gcd(n, g);
      if (!g2.is_one()) {
        n = div(n, g2);
        d = div(d, g2);
      }
    }
    return normalized_sign(std::move(n), std::move(d));
  }

  static std::pair<Polynomial, Polynomial> substitute_poly(const Polynomial& p,
                                                           const std::map<Var, RationalFunction>& bindings) {
    struct Bound {
      Var x;
      unsigned top;
      std::vector<Polynomial> num_pow, den_pow;
    };
    std::vector<Bound> bound;
    Polynomial den(1);
    for (const auto& [x, value] : bindings) {
      const unsigned top = p.degree(x);
      if (top == 0) continue;
      Bound b{x, top, {Polynomial(1)}, {Polynomial(1)}};
      for (unsigned k = 1; k <= top; ++k) {
        b.num_pow.push_back(b.num_pow.back() * value.numerator());
        b.den_pow.push_back(b.den_pow.back() * value.denominator());
      }
      den *= b.den_pow[top];
      bound.push_back(std::move(b));
    }
    if (bound.empty()) return {p, Polynomial(1)};
    Polynomial num;
    for (const auto& t : p.terms()) {
      Monomial rest = t.mono;
      Polynomial factor = Polynomial::monomial(Monomial{}, t.coef);
      for (const auto& b : bound) {
        const unsigned e = t.mono.degree(b.x);
        rest = rest.without(b.x);
        factor *= b.num_pow[e] * b.den_pow[b.top - e];
      }
      num += factor.times_term({rest, 1});
    }
    return {num, den};
  }

  Polynomial num_;
  Polynomial den_;
};

inline RationalFunction rf(Var x) { return RationalFunction::var(x); }

inline std::string to_string(const RationalFunction& f, Style style = Style::report) { return f.to_string(style); }

}  // namespace sydy
