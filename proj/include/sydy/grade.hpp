#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sydy/rational_function.hpp"

namespace sydy {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline constexpr Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline constexpr int bit(Parity p) { return static_cast<int>(p); }
inline constexpr int sign_of(int exponent) { return (exponent & 1) ? -1 : 1; }

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<Parity> parities) : parity_(std::move(parities)) {}

  /// C^{1|1}: first basis vector even, second odd.
  static GradedSpace gl11() { return GradedSpace({Parity::even, Parity::odd}); }
  static GradedSpace trivial() { return GradedSpace({Parity::even}); }

  std::size_t dim() const { return parity_.size(); }
  Parity parity(std::size_t i) const { return parity_.at(i); }
  const std::vector<Parity>& parities() const { return parity_; }

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

  /// Row-major basis (i, k) -> i * dim(b) + k.
  friend GradedSpace tensor(const GradedSpace& a, const GradedSpace& b) {
    std::vector<Parity> p;
    p.reserve(a.dim() * b.dim());
    for (auto x : a.parity_)
      for (auto y : b.parity_) p.push_back(x + y);
    return GradedSpace(std::move(p));
  }

 private:
  std::vector<Parity> parity_;
};

/// Sparse matrix of rational functions between graded spaces.
class GradedMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  GradedMatrix() = default;
  GradedMatrix(GradedSpace rows, GradedSpace cols) : rows_(std::move(rows)), cols_(std::move(cols)) {}
  explicit GradedMatrix(const GradedSpace& square) : rows_(square), cols_(square) {}

  static GradedMatrix identity(const GradedSpace& s) { return scalar(s, RationalFunction(1)); }
  static GradedMatrix scalar(const GradedSpace& s, const RationalFunction& x) {
    GradedMatrix m(s);
    for (std::size_t i = 0; i < s.dim(); ++i) m.set(i, i, x);
    return m;
  }
  /// Matrix unit E_ij.
  static GradedMatrix unit(const GradedSpace& s, std::size_t i, std::size_t j, const RationalFunction& x = 1) {
    GradedMatrix m(s);
    m.set(i, j, x);
    return m;
  }

  const GradedSpace& rows() const { return rows_; }
  const GradedSpace& cols() const { return cols_; }
  const std::map<Index, RationalFunction>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  RationalFunction at(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? RationalFunction() : it->second;
  }

  void set(std::size_t i, std::size_t j, RationalFunction x) {
    if (i >= rows_.dim() || j >= cols_.dim()) throw DimensionMismatch("matrix index out of range");
    if (x.is_zero()) {
      entries_.erase({i, j});
    } else {
      entries_.insert_or_assign(Index{i, j}, std::move(x));
    }
  }

  void add_to(std::size_t i, std::size_t j, const RationalFunction& x) {
    if (x.is_zero()) return;
    auto it = entries_.find({i, j});
    if (it == entries_.end()) {
      set(i, j, x);
    } else {
      it->second += x;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  /// Common parity of the nonzero entries, or nullopt if inhomogeneous. Zero is even.
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [ij, x] : entries_) {
      Parity q = rows_.parity(ij.first) + cols_.parity(ij.second);
      if (p && *p != q) return std::nullopt;
      p = q;
    }
    return p.value_or(Parity::even);
  }

  friend bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  GradedMatrix operator-() const {
    GradedMatrix r = *this;
    for (auto& [ij, x] : r.entries_) x = -x;
    return r;
  }

  friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) {
    a.check_same_shape(b);
    for (const auto& [ij, x] : b.entries_) a.add_to(ij.first, ij.second, x);
    return a;
  }
  friend GradedMatrix operator-(const GradedMatrix& a, const GradedMatrix& b) { return a + (-b); }

  friend GradedMatrix operator*(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.cols_.dim() != b.rows_.dim()) throw DimensionMismatch("matrix product shape mismatch");
    GradedMatrix c(a.rows_, b.cols_);
    std::map<Index, std::vector<RationalFunction>> acc;
    for (const auto& [ik, x] : a.entries_) {
      auto it = b.entries_.lower_bound({ik.second, 0});
      for (; it != b.entries_.end() && it->first.first == ik.second; ++it)
        acc[{ik.first, it->first.second}].push_back(x * it->second);
    }
    for (auto& [ij, terms] : acc) c.set(ij.first, ij.second, sum(terms));
    return c;
  }

  friend GradedMatrix operator*(const RationalFunction& s, GradedMatrix m) {
    if (s.is_zero()) return GradedMatrix(m.rows_, m.cols_);
    for (auto& [ij, x] : m.entries_) x = s * x;
    return m;
  }

  GradedMatrix& operator+=(const GradedMatrix& b) { return *this = *this + b; }
  GradedMatrix& operator-=(const GradedMatrix& b) { return *this = *this - b; }
  GradedMatrix& operator*=(const GradedMatrix& b) { return *this = *this * b; }

  template <class F>
  GradedMatrix transformed(F&& f) const {
    GradedMatrix r(rows_, cols_);
    for (const auto& [ij, x] : entries_) r.set(ij.first, ij.second, f(x));
    return r;
  }

  GradedMatrix substitute(const std::map<Var, RationalFunction>& bindings) const {
    return transformed([&](const RationalFunction& x) { return x.substitute(bindings); });
  }
  GradedMatrix substitute(Var x, const RationalFunction& value) const { return substitute({{x, value}}); }

  /// Dense grid "[a, b; c, d]" of canonical entries.
  std::string to_string(Style style = Style::report) const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.dim(); ++i) {
      if (i) s += "; ";
      for (std::size_t j = 0; j < cols_.dim(); ++j) {
        if (j) s += ", ";
        s += at(i, j).to_string(style);
      }
    }
    return s + "]";
  }

  static RationalFunction sum(std::vector<RationalFunction>& terms) {
    // Pairwise so that equal denominators meet early.
    while (terms.size() > 1) {
      std::vector<RationalFunction> next;
      next.reserve((terms.size() + 1) / 2);
      for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
      if (terms.size() % 2) next.push_back(std::move(terms.back()));
      terms = std::move(next);
    }
    return terms.empty() ? RationalFunction() : terms.front();
  }

 private:
  void check_same_shape(const GradedMatrix& b) const {
    if (rows_.dim() != b.rows_.dim() || cols_.dim() != b.cols_.dim()) throw DimensionMismatch("matrix sum shape mismatch");
  }

  GradedSpace rows_;
  GradedSpace cols_;
  std::map<Index, RationalFunction> entries_;
};

/// Graded Kronecker product: (A⊗B)_{(ik),(jl)} = (-1)^{p(j)(p(k)+p(l))} A_ij B_kl.
inline GradedMatrix graded_kron(const GradedMatrix& a, const GradedMatrix& b) {
  GradedMatrix r(tensor(a.rows(), b.rows()), tensor(a.cols(), b.cols()));
  const std::size_t br = b.rows().dim();
  const std::size_t bc = b.cols().dim();
  for (const auto& [ij, x] : a.entries()) {
    const int pj = bit(a.cols().parity(ij.second));
    for (const auto& [kl, y] : b.entries()) {
      const int pkl = bit(b.rows().parity(kl.first)) + bit(b.cols().parity(kl.second));
      RationalFunction e = x * y;
      if (sign_of(pj * pkl) < 0) e = -e;
      r.set(ij.first * br + kl.first, ij.second * bc + kl.second, std::move(e));
    }
  }
  return r;
}

/// Kronecker product without signs.
inline GradedMatrix kron(const GradedMatrix& a, const GradedMatrix& b) {
  GradedMatrix r(tensor(a.rows(), b.rows()), tensor(a.cols(), b.cols()));
  const std::size_t br = b.rows().dim();
  const std::size_t bc = b.cols().dim();
  for (const auto& [ij, x] : a.entries())
    for (const auto& [kl, y] : b.entries()) r.set(ij.first * br + kl.first, ij.second * bc + kl.second, x * y);
  return r;
}

/// Super permutation on V⊗V: x⊗y -> (-1)^{p(x)p(y)} y⊗x.
inline GradedMatrix super_permutation(const GradedSpace& v) {
  const std::size_t n = v.dim();
  GradedMatrix p(tensor(v, v));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      p.set(b * n + a, a * n + b, sign_of(bit(v.parity(a)) * bit(v.parity(b))));
  return p;
}

/// η on V⊗V: diagonal (-1)^{p(i)p(k)} at (ik),(ik).
inline GradedMatrix eta_twist(const GradedSpace& v) {
  const std::size_t n = v.dim();
  GradedMatrix eta(tensor(v, v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) eta.set(i * n + k, i * n + k, sign_of(bit(v.parity(i)) * bit(v.parity(k))));
  return eta;
}

/// (st M)_ij = (-1)^{i+j} M_ji.
inline GradedMatrix super_transpose(const GradedMatrix& m) {
  GradedMatrix r(m.cols(), m.rows());
  for (const auto& [ij, x] : m.entries()) r.set(ij.second, ij.first, sign_of(static_cast<int>(ij.first + ij.second)) * x);
  return r;
}

/// Embeds a two-leg operator on legs (a, b) of a three-fold tensor power, without signs.
inline GradedMatrix embed_legs(const GradedMatrix& m, const GradedSpace& v, std::size_t a, std::size_t b) {
  const std::size_t n = v.dim();
  const GradedSpace v3 = tensor(tensor(v, v), v);
  GradedMatrix r(v3);
  auto idx = [n](std::size_t x0, std::size_t x1, std::size_t x2) { return (x0 * n + x1) * n + x2; };
  const std::size_t spectator = 3 - a - b;
  for (const auto& [rc, x] : m.entries()) {
    const std::size_t ra = rc.first / n;
    const std::size_t rb = rc.first % n;
    const std::size_t ca = rc.second / n;
    const std::size_t cb = rc.second % n;
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t row[3];
      std::size_t col[3];
      row[a] = ra;
      row[b] = rb;
      row[spectator] = s;
      col[a] = ca;
      col[b] = cb;
      col[spectator] = s;
      r.set(idx(row[0], row[1], row[2]), idx(col[0], col[1], col[2]), x);
    }
  }
  return r;
}

/// Exact inverse by Gauss-Jordan elimination over the rational-function field.
inline GradedMatrix inverse(const GradedMatrix& m) {
  const std::size_t n = m.rows().dim();
  if (m.cols().dim() != n) throw DimensionMismatch("inverse of a non-square matrix");
  std::vector<std::vector<RationalFunction>> a(n, std::vector<RationalFunction>(2 * n));
  for (const auto& [ij, x] : m.entries()) a[ij.first][ij.second] = x;
  for (std::size_t i = 0; i < n; ++i) a[i][n + i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular over the rational-function field");
    std::swap(a[piv], a[col]);
    const RationalFunction inv = a[col][col].inverse();
    for (auto& x : a[col]) x = x * inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const RationalFunction f = a[r][col];
      for (std::size_t k = 0; k < 2 * n; ++k)
        if (!a[col][k].is_zero()) a[r][k] -= f * a[col][k];
    }
  }
  GradedMatrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.set(i, j, a[i][n + j]);
  return r;
}

}  // namespace sydy
