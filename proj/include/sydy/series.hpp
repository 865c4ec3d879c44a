#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "sydy/grade.hpp"

namespace sydy {

class WindowExhausted : public Error {
 public:
  using Error::Error;
};

inline constexpr long kNegInf = std::numeric_limits<long>::min() / 4;
inline constexpr long kPosInf = std::numeric_limits<long>::max() / 4;

/// Closed integer interval; lo > hi is empty, kNegInf/kPosInf mark unbounded ends.
struct ModeInterval {
  long lo = 0;
  long hi = -1;

  static ModeInterval empty_set() { return {0, -1}; }
  static ModeInterval all() { return {kNegInf, kPosInf}; }

  bool empty() const { return lo > hi; }
  bool bounded_below() const { return lo > kNegInf; }
  bool bounded_above() const { return hi < kPosInf; }
  bool finite() const { return empty() || (bounded_below() && bounded_above()); }
  bool contains(long m) const { return lo <= m && m <= hi; }
  bool contains(const ModeInterval& o) const { return o.empty() || (lo <= o.lo && o.hi <= hi); }

  ModeInterval shifted(long k) const {
    if (empty()) return *this;
    return {bounded_below() ? lo + k : lo, bounded_above() ? hi + k : hi};
  }

  friend ModeInterval operator+(const ModeInterval& a, const ModeInterval& b) {
    if (a.empty() || b.empty()) return empty_set();
    const long lo = (a.bounded_below() && b.bounded_below()) ? a.lo + b.lo : kNegInf;
    const long hi = (a.bounded_above() && b.bounded_above()) ? a.hi + b.hi : kPosInf;
    return {lo, hi};
  }

  friend ModeInterval intersect(const ModeInterval& a, const ModeInterval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  }

  friend bool operator==(const ModeInterval&, const ModeInterval&) = default;
};

/// Laurent series in one variable. Modes outside `support` vanish; modes inside
/// `support` are known exactly only inside `window`.
template <class T>
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(Var var, T zero) : var_(var), zero_(std::move(zero)) {}

  Var var() const { return var_; }
  const ModeInterval& support() const { return support_; }
  const ModeInterval& window() const { return window_; }
  const std::map<long, T>& coeffs() const { return coeffs_; }
  const T& zero() const { return zero_; }

  bool exact_at(long m) const { return !support_.contains(m) || window_.contains(m); }

  const T& operator[](long m) const {
    if (!exact_at(m)) throw WindowExhausted("mode " + std::to_string(m) + " lies outside the exact window");
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? zero_ : it->second;
  }

  void set_meta(ModeInterval support, ModeInterval window) {
    support_ = support;
    window_ = intersect(window, support);
    std::erase_if(coeffs_, [&](const auto& kv) { return !window_.contains(kv.first); });
  }

  void set(long m, T x) {
    if (is_zero_value(x)) {
      coeffs_.erase(m);
    } else {
      coeffs_.insert_or_assign(m, std::move(x));
    }
  }

  /// Multiplication by var^k.
  TruncatedSeries shifted(long k) const {
    TruncatedSeries r(var_, zero_);
    r.support_ = support_.shifted(k);
    r.window_ = window_.shifted(k);
    for (const auto& [m, x] : coeffs_) r.coeffs_.emplace(m + k, x);
    return r;
  }

  template <class S>
  TruncatedSeries scaled(const S& s) const {
    TruncatedSeries r = *this;
    r.coeffs_.clear();
    for (const auto& [m, x] : coeffs_) r.set(m, s * x);
    return r;
  }

 private:
  static bool is_zero_value(const T& x) { return x.is_zero(); }

  Var var_ = Var::u;
  ModeInterval support_ = ModeInterval::empty_set();
  ModeInterval window_ = ModeInterval::empty_set();
  std::map<long, T> coeffs_;
  T zero_{};
};

using ScalarSeries = TruncatedSeries<RationalFunction>;
using OperatorSeries = TruncatedSeries<GradedMatrix>;

namespace detail {

inline std::vector<RationalFunction> coefficient_list(const Polynomial& p, Var x) {
  std::vector<RationalFunction> out;
  for (auto& c : p.coefficients_in(x)) out.emplace_back(std::move(c));
  return out;
}

/// Modes a of s contributing to mode m of a Cauchy product with t.
inline ModeInterval contributing(const ModeInterval& s, const ModeInterval& t, long m) {
  const long lo = t.bounded_above() ? std::max(s.lo, m - t.hi) : s.lo;
  const long hi = t.bounded_below() ? std::min(s.hi, m - t.lo) : s.hi;
  return {lo, hi};
}

/// Support and exact window of a Cauchy product, derived from the inputs' metadata.
inline std::pair<ModeInterval, ModeInterval> cauchy_meta(const ModeInterval& s_sup, const ModeInterval& s_win,
                                                         const ModeInterval& t_sup, const ModeInterval& t_win) {
  const ModeInterval support = s_sup + t_sup;
  if (support.empty()) return {support, ModeInterval::empty_set()};
  const ModeInterval candidates = intersect(s_win + t_win, support);
  ModeInterval best = ModeInterval::empty_set();
  ModeInterval run = ModeInterval::empty_set();
  for (long m = candidates.lo; !candidates.empty() && m <= candidates.hi; ++m) {
    const ModeInterval a = contributing(s_sup, t_sup, m);
    const bool ok = a.finite() && s_win.contains(a) &&
                    (a.empty() || t_win.contains(ModeInterval{m - a.hi, m - a.lo}));
    if (ok) {
      run = run.empty() ? ModeInterval{m, m} : ModeInterval{run.lo, m};
      if (run.hi - run.lo > best.hi - best.lo || best.empty()) best = run;
    } else {
      run = ModeInterval::empty_set();
    }
  }
  return {support, best};
}

}  // namespace detail

/// Expansion in non-positive powers of var (the region |var| large).
inline ScalarSeries expand_at_infinity(const RationalFunction& f, Var x, long n) {
  ScalarSeries s(x, RationalFunction());
  if (f.is_zero()) return s;
  const auto p = detail::coefficient_list(f.numerator(), x);
  const auto q = detail::coefficient_list(f.denominator(), x);
  const long dp = static_cast<long>(p.size()) - 1;
  const long dq = static_cast<long>(q.size()) - 1;
  const long d = dp - dq;
  if (dq == 0) {
    for (long k = 0; k <= dp; ++k) s.set(k, p[static_cast<std::size_t>(k)] / q[0]);
    s.set_meta({0, dp}, {0, dp});
    return s;
  }
  const RationalFunction lead_inv = q.back().inverse();
  std::vector<RationalFunction> b;
  for (long k = 0; k <= d + n; ++k) {
    RationalFunction acc = k <= dp ? p[static_cast<std::size_t>(dp - k)] : RationalFunction();
    for (long j = 1; j <= std::min(k, dq); ++j) acc -= q[static_cast<std::size_t>(dq - j)] * b[static_cast<std::size_t>(k - j)];
    b.push_back(acc * lead_inv);
    s.set(d - k, b.back());
  }
  s.set_meta({kNegInf, d}, {-n, d});
  return s;
}

/// Taylor expansion in non-negative powers of var.
inline ScalarSeries expand_at_zero(const RationalFunction& f, Var x, long n) {
  ScalarSeries s(x, RationalFunction());
  if (f.is_zero()) return s;
  const auto p = detail::coefficient_list(f.numerator(), x);
  const auto q = detail::coefficient_list(f.denominator(), x);
  const long dp = static_cast<long>(p.size()) - 1;
  const long dq = static_cast<long>(q.size()) - 1;
  if (q[0].is_zero())
    throw ZeroDivisionError("denominator vanishes at " + std::string(var_name(x)) + " = 0");
  if (dq == 0) {
    for (long k = 0; k <= dp; ++k) s.set(k, p[static_cast<std::size_t>(k)] / q[0]);
    s.set_meta({0, dp}, {0, dp});
    return s;
  }
  const RationalFunction q0_inv = q[0].inverse();
  std::vector<RationalFunction> b;
  for (long k = 0; k <= n; ++k) {
    RationalFunction acc = k <= dp ? p[static_cast<std::size_t>(k)] : RationalFunction();
    for (long j = 1; j <= std::min(k, dq); ++j) acc -= q[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    b.push_back(acc * q0_inv);
    s.set(k, b.back());
  }
  s.set_meta({0, kPosInf}, {0, n});
  return s;
}

enum class Region { infinity, zero };

inline ScalarSeries expand(const RationalFunction& f, Var x, Region r, long n) {
  return r == Region::infinity ? expand_at_infinity(f, x, n) : expand_at_zero(f, x, n);
}

/// Entrywise expansion of an operator-valued rational function.
inline OperatorSeries expand(const GradedMatrix& m, Var x, Region r, long n) {
  OperatorSeries s(x, GradedMatrix(m.rows(), m.cols()));
  std::vector<std::pair<GradedMatrix::Index, ScalarSeries>> parts;
  ModeInterval support = ModeInterval::empty_set();
  ModeInterval span = ModeInterval::empty_set();
  for (const auto& [ij, f] : m.entries()) {
    ScalarSeries e = expand(f, x, r, n);
    const ModeInterval& sup = e.support();
    const ModeInterval& win = e.window();
    support = support.empty() ? sup : ModeInterval{std::min(support.lo, sup.lo), std::max(support.hi, sup.hi)};
    if (!win.empty()) span = span.empty() ? win : ModeInterval{std::min(span.lo, win.lo), std::max(span.hi, win.hi)};
    parts.emplace_back(ij, std::move(e));
  }
  span = intersect(span, support);
  ModeInterval window = ModeInterval::empty_set();
  ModeInterval run = ModeInterval::empty_set();
  for (long k = span.lo; !span.empty() && k <= span.hi; ++k) {
    const bool ok = std::all_of(parts.begin(), parts.end(), [k](const auto& p) { return p.second.exact_at(k); });
    if (!ok) {
      run = ModeInterval::empty_set();
      continue;
    }
    run = run.empty() ? ModeInterval{k, k} : ModeInterval{run.lo, k};
    if (window.empty() || run.hi - run.lo > window.hi - window.lo) window = run;
  }
  for (long k = window.lo; !window.empty() && k <= window.hi; ++k) {
    GradedMatrix c(m.rows(), m.cols());
    for (const auto& [ij, e] : parts) c.set(ij.first, ij.second, e[k]);
    s.set(k, std::move(c));
  }
  s.set_meta(support, window);
  return s;
}

/// Cauchy product; `mul` combines coefficients in order (s-coefficient first).
template <class T, class Mul>
TruncatedSeries<T> series_mul(const TruncatedSeries<T>& s, const TruncatedSeries<T>& t, Mul&& mul, T zero) {
  if (s.var() != t.var()) throw Error("series_mul needs a common variable");
  auto [support, window] = detail::cauchy_meta(s.support(), s.window(), t.support(), t.window());
  TruncatedSeries<T> r(s.var(), std::move(zero));
  if (!support.empty() && window.empty())
    throw WindowExhausted("series product has an empty exact window");
  for (long m = window.lo; !window.empty() && m <= window.hi; ++m) {
    const ModeInterval a = detail::contributing(s.support(), t.support(), m);
    std::optional<T> acc;
    for (long k = a.lo; k <= a.hi; ++k) {
      auto si = s.coeffs().find(k);
      auto ti = t.coeffs().find(m - k);
      if (si == s.coeffs().end() || ti == t.coeffs().end()) continue;
      T term = mul(si->second, ti->second);
      acc = acc ? T(*acc + term) : term;
    }
    if (acc) r.set(m, std::move(*acc));
  }
  r.set_meta(support, window);
  return r;
}

inline ScalarSeries series_mul(const ScalarSeries& s, const ScalarSeries& t) {
  return series_mul(s, t, [](const RationalFunction& a, const RationalFunction& b) { return a * b; },
                    RationalFunction());
}

inline OperatorSeries series_mul(const OperatorSeries& s, const OperatorSeries& t) {
  return series_mul(s, t, [](const GradedMatrix& a, const GradedMatrix& b) { return a * b; },
                    GradedMatrix(s.zero().rows(), t.zero().cols()));
}

/// Cauchy product whose coefficients are combined by the graded tensor product.
inline OperatorSeries series_tensor(const OperatorSeries& s, const OperatorSeries& t) {
  const GradedMatrix zero = graded_kron(s.zero(), t.zero());
  return series_mul(s, t, [](const GradedMatrix& a, const GradedMatrix& b) { return graded_kron(a, b); }, zero);
}

/// δ(x - y) = Σ_k x^k y^{-k-1}.
struct DeltaSeries {
  Var x = Var::u;
  Var y = Var::v;

  int coefficient(long m, long n) const { return m + n == -1 ? 1 : 0; }
};

/// Table of modes (m, n) ∈ [-N, N]² with a per-cell validity flag.
template <class T>
class ModeTable {
 public:
  ModeTable(long n, T zero)
      : n_(n), zero_(std::move(zero)), cells_(size(), zero_), valid_(size(), 1) {}

  long bound() const { return n_; }
  bool valid(long m, long k) const { return valid_[index(m, k)] != 0; }
  void invalidate(long m, long k) { valid_[index(m, k)] = 0; }
  const T& at(long m, long k) const { return cells_[index(m, k)]; }
  T& at(long m, long k) { return cells_[index(m, k)]; }
  const T& zero() const { return zero_; }

  std::size_t valid_count() const { return static_cast<std::size_t>(std::count(valid_.begin(), valid_.end(), 1)); }

  /// Adds `other` cellwise; validity is the conjunction.
  void accumulate(const ModeTable& other, int sign = 1) {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      valid_[i] = valid_[i] && other.valid_[i];
      if (!valid_[i]) continue;
      cells_[i] = sign > 0 ? T(cells_[i] + other.cells_[i]) : T(cells_[i] - other.cells_[i]);
    }
  }

 private:
  std::size_t size() const { return static_cast<std::size_t>((2 * n_ + 1) * (2 * n_ + 1)); }
  std::size_t index(long m, long k) const {
    if (m < -n_ || m > n_ || k < -n_ || k > n_) throw WindowExhausted("mode pair outside the table");
    return static_cast<std::size_t>((m + n_) * (2 * n_ + 1) + (k + n_));
  }

  long n_;
  T zero_;
  std::vector<T> cells_;
  std::vector<char> valid_;
};

/// Adds coef · s(x) · t(y) [· δ(x - y)] into `table`, marking cells that are not exactly known.
/// `put(cell, value)` folds a scalar contribution into a cell.
/// `put(cell, coef, s_m, t_k)` may take the factors unmultiplied instead.
template <class T, class C, class S, class Put>
void add_separable(ModeTable<T>& table, const C& coef, const TruncatedSeries<S>& s, const TruncatedSeries<S>& t,
                   bool with_delta, Put&& put) {
  auto emit = [&](T& cell, const S& a, const S& b) {
    if constexpr (std::is_invocable_v<Put&, T&, const C&, const S&, const S&>) {
      put(cell, coef, a, b);
    } else {
      put(cell, coef * a * b);
    }
  };
  const long n = table.bound();
  for (long m = -n; m <= n; ++m) {
    for (long k = -n; k <= n; ++k) {
      if (!table.valid(m, k)) continue;
      if (!with_delta) {
        if (!s.exact_at(m) || !t.exact_at(k)) {
          table.invalidate(m, k);
          continue;
        }
        auto si = s.coeffs().find(m);
        auto ti = t.coeffs().find(k);
        if (si == s.coeffs().end() || ti == t.coeffs().end()) continue;
        emit(table.at(m, k), si->second, ti->second);
        continue;
      }
      // Σ_j s_{m-j} t_{k+j+1}: j ranges where both modes lie in the supports.
      const ModeInterval& ss = s.support();
      const ModeInterval& ts = t.support();
      if (ss.empty() || ts.empty()) continue;
      const long jlo = std::max(ss.bounded_above() ? m - ss.hi : kNegInf, ts.bounded_below() ? ts.lo - k - 1 : kNegInf);
      const long jhi = std::min(ss.bounded_below() ? m - ss.lo : kPosInf, ts.bounded_above() ? ts.hi - k - 1 : kPosInf);
      if (jlo > jhi) continue;
      if (jlo <= kNegInf || jhi >= kPosInf) {
        table.invalidate(m, k);
        continue;
      }
      bool exact = true;
      for (long j = jlo; j <= jhi && exact; ++j) exact = s.exact_at(m - j) && t.exact_at(k + j + 1);
      if (!exact) {
        table.invalidate(m, k);
        continue;
      }
      for (long j = jlo; j <= jhi; ++j) {
        auto si = s.coeffs().find(m - j);
        auto ti = t.coeffs().find(k + j + 1);
        if (si == s.coeffs().end() || ti == t.coeffs().end()) continue;
        emit(table.at(m, k), si->second, ti->second);
      }
    }
  }
}

/// Table of s(x)·t(y)·δ(x - y) on [-N, N]².
inline ModeTable<RationalFunction> delta_pairing(const ScalarSeries& s, const ScalarSeries& t, long n) {
  ModeTable<RationalFunction> table(n, RationalFunction());
  add_separable(table, RationalFunction(1), s, t, true, [](RationalFunction& cell, const RationalFunction& x) { cell += x; });
  return table;
}

/// Constant series 1 in the given variable.
inline ScalarSeries unit_series(Var x) { return expand_at_infinity(RationalFunction(1), x, 0); }

}  // namespace sydy
