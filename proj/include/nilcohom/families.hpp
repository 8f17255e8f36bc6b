#pragma once

#include "nilcohom/grouplaw.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcohom::families {

/// Generators x_1..x_k, y_1..y_k (degree one, in that order) and a central z
/// with [x_i, y_i] = z^{d_i}; all other pairs commute. Requires d_1 | ... | d_k.
inline GroupPresentation paper_example(const std::vector<Int>& d) {
  if (d.empty()) throw std::invalid_argument("paper-example: at least one divisor required");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) throw std::invalid_argument("paper-example: divisors must be >= 1");
    if (i > 0 && d[i] % d[i - 1] != 0)
      throw std::invalid_argument("paper-example: divisors must form a chain d1 | d2 | ...");
  }
  const std::size_t k = d.size();
  GroupPresentation P;
  P.n = 2 * k;
  P.m = 1;
  for (std::size_t i = 0; i < k; ++i) P.set_bracket(i, k + i, {d[i]});
  return P;
}

/// Integer Heisenberg group: [x_1, x_2] = y_1.
inline GroupPresentation heisenberg() { return paper_example({1}); }

inline GroupPresentation abelian(std::size_t n) {
  GroupPresentation P;
  P.n = n;
  return P;
}

/// Random bracket constants in [-bound, bound], re-drawn until rank(c) = m.
inline GroupPresentation random(std::size_t n, std::size_t m, std::int64_t bound, std::uint64_t seed) {
  if (m > n * (n - (n ? 1 : 0)) / 2)
    throw std::invalid_argument("random: m = " + std::to_string(m) + " exceeds C(n,2)");
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  for (int attempt = 0; attempt < 100; ++attempt) {
    GroupPresentation P;
    P.n = n;
    P.m = m;
    if (m > 0)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          IntVector y(m);
          for (auto& v : y) v = dist(engine);
          if (!is_zero(y)) P.brackets[{i, j}] = std::move(y);
        }
    if (validate(P).accepted()) return P;
  }
  throw std::runtime_error("random: no presentation with rank(c) = m after 100 attempts");
}

}  // namespace nilcohom::families
