#pragma once

#include "nilcohom/exactlinalg.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilcohom {

/// A class-2 T-group given by a Mal'cev basis x_1..x_n, y_1..y_m and the bracket
/// structure constants [x_i, x_j] = y^{bracket(i,j)} for i < j. Indices are
/// 0-based in the API and 1-based in the file format.
///
/// Construction does not check anything; validate() reports what is wrong.
struct GroupPresentation {
  std::size_t n = 0;
  std::size_t m = 0;
  /// Only pairs with i < j are meaningful; absent pairs are zero.
  std::map<std::pair<std::size_t, std::size_t>, IntVector> brackets;

  /// Antisymmetric access: bracket(j, i) = -bracket(i, j), bracket(i, i) = 0.
  IntVector bracket(std::size_t i, std::size_t j) const {
    if (i == j) return zeros(m);
    const bool flip = i > j;
    auto it = brackets.find(flip ? std::pair{j, i} : std::pair{i, j});
    if (it == brackets.end()) return zeros(m);
    IntVector v = it->second;
    if (flip)
      for (auto& x : v) x = -x;
    return v;
  }

  void set_bracket(std::size_t i, std::size_t j, IntVector y) {
    if (i > j) {
      for (auto& x : y) x = -x;
      std::swap(i, j);
    }
    brackets[{i, j}] = std::move(y);
  }

  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

/// Normal form x_1^{a_1} ... x_n^{a_n} y_1^{b_1} ... y_m^{b_m}.
struct GroupElement {
  IntVector a;
  IntVector b;

  static GroupElement identity(const GroupPresentation& P) { return {zeros(P.n), zeros(P.m)}; }
  static GroupElement x(const GroupPresentation& P, std::size_t i, const Int& power = 1) {
    auto g = identity(P);
    g.a.at(i) = power;
    return g;
  }
  static GroupElement y(const GroupPresentation& P, std::size_t j, const Int& power = 1) {
    auto g = identity(P);
    g.b.at(j) = power;
    return g;
  }

  bool is_identity() const { return is_zero(a) && is_zero(b); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  os << "(a=[";
  for (std::size_t i = 0; i < g.a.size(); ++i) os << (i ? "," : "") << g.a[i];
  os << "], b=[";
  for (std::size_t j = 0; j < g.b.size(); ++j) os << (j ? "," : "") << g.b[j];
  return os << "])";
}

struct ValidationReport {
  std::vector<std::string> failures;
  bool accepted() const { return failures.empty(); }
};

/// m x C(n,2) matrix of `bracket` restricted to valid entries, pairs in lex order.
inline IntMatrix bracket_matrix(const GroupPresentation& P);

inline ValidationReport validate(const GroupPresentation& P) {
  ValidationReport report;
  bool indices_ok = true;
  for (const auto& [key, y] : P.brackets) {
    const auto [i, j] = key;
    const std::string pair = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    if (i >= P.n || j >= P.n) {
      report.failures.push_back("bracket " + pair + ": index out of range 1.." + std::to_string(P.n));
      indices_ok = false;
    } else if (i >= j) {
      report.failures.push_back("bracket " + pair + ": requires i < j");
      indices_ok = false;
    }
    if (y.size() != P.m) {
      report.failures.push_back("bracket " + pair + ": y has length " + std::to_string(y.size()) +
                                ", expected m = " + std::to_string(P.m));
      indices_ok = false;
    }
  }
  if (indices_ok) {
    const std::size_t r = rank(bracket_matrix(P));
    if (r < P.m)
      report.failures.push_back("rank(c) = " + std::to_string(r) + " < m = " + std::to_string(P.m));
  }
  return report;
}

inline IntMatrix bracket_matrix(const GroupPresentation& P) {
  IntMatrix c(P.m, choose(P.n, 2));
  std::size_t col = 0;
  for (std::size_t i = 0; i < P.n; ++i)
    for (std::size_t j = i + 1; j < P.n; ++j, ++col) {
      auto it = P.brackets.find({i, j});
      if (it == P.brackets.end() || it->second.size() != P.m) continue;
      for (std::size_t l = 0; l < P.m; ++l) c(l, col) = it->second[l];
    }
  return c;
}

namespace detail {

// Visits well-formed entries (i < j < n, length m); validate() reports the rest.
template <class Fn>
void for_each_bracket(const GroupPresentation& P, Fn&& fn) {
  for (const auto& [key, y] : P.brackets) {
    const auto [i, j] = key;
    if (i < j && j < P.n && y.size() == P.m) fn(i, j, y);
  }
}

inline void check_element(const GroupPresentation& P, const GroupElement& g, const char* what) {
  if (g.a.size() != P.n || g.b.size() != P.m)
    throw std::invalid_argument(std::string(what) + ": element has shape (" +
                                std::to_string(g.a.size()) + "," + std::to_string(g.b.size()) +
                                "), presentation expects (" + std::to_string(P.n) + "," +
                                std::to_string(P.m) + ")");
}

}  // namespace detail

/// Collection in class 2: x_j^{p} x_i^{q} = x_i^{q} x_j^{p} y^{-pq bracket(i,j)} for i < j.
inline GroupElement multiply(const GroupPresentation& P, const GroupElement& g, const GroupElement& h) {
  detail::check_element(P, g, "multiply");
  detail::check_element(P, h, "multiply");
  GroupElement out{g.a, g.b};
  for (std::size_t i = 0; i < P.n; ++i) out.a[i] += h.a[i];
  for (std::size_t l = 0; l < P.m; ++l) out.b[l] += h.b[l];
  detail::for_each_bracket(P, [&](std::size_t i, std::size_t j, const IntVector& y) {
    Int w = g.a[j] * h.a[i];
    if (w == 0) return;
    for (std::size_t l = 0; l < P.m; ++l) out.b[l] -= w * y[l];
  });
  return out;
}

inline GroupElement inverse(const GroupPresentation& P, const GroupElement& g) {
  detail::check_element(P, g, "inverse");
  GroupElement out{g.a, g.b};
  for (auto& x : out.a) x = -x;
  for (auto& x : out.b) x = -x;
  detail::for_each_bracket(P, [&](std::size_t i, std::size_t j, const IntVector& y) {
    Int w = g.a[i] * g.a[j];
    if (w == 0) return;
    for (std::size_t l = 0; l < P.m; ++l) out.b[l] -= w * y[l];
  });
  return out;
}

/// [g, h] = g h g^-1 h^-1, computed from the closed bilinear formula.
inline GroupElement commutator(const GroupPresentation& P, const GroupElement& g, const GroupElement& h) {
  detail::check_element(P, g, "commutator");
  detail::check_element(P, h, "commutator");
  GroupElement out = GroupElement::identity(P);
  detail::for_each_bracket(P, [&](std::size_t i, std::size_t j, const IntVector& y) {
    Int w = g.a[i] * h.a[j] - g.a[j] * h.a[i];
    if (w == 0) return;
    for (std::size_t l = 0; l < P.m; ++l) out.b[l] += w * y[l];
  });
  return out;
}

/// Deterministic source of group elements with exponents uniform in [-bound, bound].
class ElementSampler {
 public:
  ElementSampler(const GroupPresentation& P, std::int64_t bound, std::uint64_t seed)
      : P_(&P), dist_(-bound, bound), engine_(seed) {
    if (bound < 1) throw std::invalid_argument("ElementSampler: bound must be >= 1");
  }
  /// Per-trial stream derived from (seed, trial index).
  ElementSampler(const GroupPresentation& P, std::int64_t bound, std::uint64_t seed, std::uint64_t stream)
      : ElementSampler(P, bound, seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  GroupElement operator()() {
    GroupElement g = GroupElement::identity(*P_);
    for (auto& x : g.a) x = dist_(engine_);
    for (auto& x : g.b) x = dist_(engine_);
    return g;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  const GroupPresentation* P_;
  std::uniform_int_distribution<std::int64_t> dist_;
  std::mt19937_64 engine_;
};

inline GroupElement random_element(const GroupPresentation& P, std::int64_t bound, std::uint64_t seed) {
  return ElementSampler(P, bound, seed)();
}

}  // namespace nilcohom
