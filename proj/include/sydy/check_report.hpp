#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sydy/grade.hpp"

namespace sydy {

enum class Verdict { pass, fail, window_exhausted };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::window_exhausted: return "window-exhausted";
  }
  return "?";
}

struct Witness {
  std::string location;
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  std::string id;
  Verdict verdict = Verdict::pass;
  std::optional<Witness> witness;
  std::int64_t millis = 0;
  std::optional<int> window;
  std::string note;
  std::vector<std::string> details;

  bool passed() const { return verdict == Verdict::pass; }

  void fail(Witness w) {
    verdict = Verdict::fail;
    if (!witness) witness = std::move(w);
  }

  /// Folds another report in: any failure wins and keeps the first witness.
  void absorb(const CheckReport& other) {
    if (other.verdict == Verdict::fail) {
      verdict = Verdict::fail;
      if (!witness && other.witness) {
        witness = other.witness;
        if (!other.id.empty()) witness->location = other.id + ": " + witness->location;
      }
    } else if (other.verdict == Verdict::window_exhausted && verdict == Verdict::pass) {
      verdict = Verdict::window_exhausted;
    }
  }
};

class Stopwatch {
 public:
  std::int64_t millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Basis label of a tensor index, e.g. index 5 of V⊗V⊗V -> "212" (1-based digits).
inline std::string tensor_label(std::size_t index, std::size_t legs, std::size_t dim = 2) {
  std::string s(legs, '1');
  for (std::size_t k = legs; k-- > 0;) {
    s[k] = static_cast<char>('1' + index % dim);
    index /= dim;
  }
  return s;
}

/// First entry where the matrices differ, scanned in row-major order.
template <class Label>
std::optional<Witness> first_difference(const GradedMatrix& lhs, const GradedMatrix& rhs, Label&& label,
                                        Style style = Style::report) {
  const GradedMatrix diff = lhs - rhs;
  if (diff.is_zero()) return std::nullopt;
  const auto& [ij, x] = *diff.entries().begin();
  return Witness{label(ij.first, ij.second), lhs.at(ij.first, ij.second).to_string(style),
                 rhs.at(ij.first, ij.second).to_string(style)};
}

}  // namespace sydy
