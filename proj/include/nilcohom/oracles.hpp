#pragma once

// Reference routines that do not go through the Smith normal form. Tests and
// the self-test compare the library against these.

#include "nilcohom/int_matrix.hpp"

#include <random>

namespace nilcohom::oracles {

/// Fraction-free (Bareiss) elimination; returns the rank.
inline std::size_t fraction_free_rank(IntMatrix A) {
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    A.swap_rows(r, piv);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) A(i, j) = (A(r, c) * A(i, j) - A(i, c) * A(r, j)) / prev;
      A(i, c) = 0;
    }
    prev = A(r, c);
    ++r;
  }
  return r;
}

/// Bareiss determinant of a square matrix.
inline Int determinant(IntMatrix A) {
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && A(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      A.swap_rows(k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(k, k) * A(i, j) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t max_dim, long long lo, long long hi) {
  std::uniform_int_distribution<std::size_t> dim(0, max_dim);
  std::uniform_int_distribution<long long> val(lo, hi);
  IntMatrix A(dim(rng), dim(rng));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = val(rng);
  return A;
}

}  // namespace nilcohom::oracles
