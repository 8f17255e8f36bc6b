#pragma once

#include "nilcohom/int_matrix.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcohom {

/// Canonical form of a finitely generated abelian group:
/// Z^free_rank (+) Z_t1 (+) ... (+) Z_tk with 2 <= t1 | t2 | ... | tk.
class AbelianGroupInvariants {
 public:
  AbelianGroupInvariants() = default;

  /// Builds the canonical form of Z^free (+) (+)_i Z_{orders[i]}. Orders of 1
  /// are dropped, orders of 0 count as free summands, negative orders are
  /// taken by absolute value.
  static AbelianGroupInvariants from_orders(std::size_t free, std::vector<Int> orders) {
    std::vector<Int> t;
    for (auto& d : orders) {
      Int a = abs(d);
      if (a == 0)
        ++free;
      else if (a != 1)
        t.push_back(std::move(a));
    }
    // Z_a (+) Z_b = Z_gcd (+) Z_lcm; sweeping left to right leaves a chain.
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        Int g = gcd(t[i], t[j]);
        Int l = t[i] / g * t[j];
        t[i] = std::move(g);
        t[j] = std::move(l);
      }
    std::erase_if(t, [](const Int& x) { return x == 1; });
    AbelianGroupInvariants out;
    out.free_rank_ = free;
    out.torsion_ = std::move(t);
    return out;
  }

  static AbelianGroupInvariants free(std::size_t rank) { return from_orders(rank, {}); }
  static AbelianGroupInvariants trivial() { return {}; }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// The torsion subgroup only.
  AbelianGroupInvariants torsion_part() const { return from_orders(0, torsion_); }

  /// r-fold direct sum of this group with itself.
  AbelianGroupInvariants repeat(std::size_t copies) const {
    std::vector<Int> t;
    for (std::size_t k = 0; k < copies; ++k) t.insert(t.end(), torsion_.begin(), torsion_.end());
    return from_orders(free_rank_ * copies, std::move(t));
  }

  friend AbelianGroupInvariants operator+(const AbelianGroupInvariants& a,
                                          const AbelianGroupInvariants& b) {
    std::vector<Int> t = a.torsion_;
    t.insert(t.end(), b.torsion_.begin(), b.torsion_.end());
    return from_orders(a.free_rank_ + b.free_rank_, std::move(t));
  }

  friend bool operator==(const AbelianGroupInvariants&, const AbelianGroupInvariants&) = default;

  /// "Z^5 (+) Z_2", "Z", "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank_ > 0) {
      os << 'Z';
      if (free_rank_ > 1) os << '^' << free_rank_;
      first = false;
    }
    for (const auto& d : torsion_) {
      if (!first) os << " (+) ";
      os << "Z_" << d;
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

inline std::ostream& operator<<(std::ostream& os, const AbelianGroupInvariants& g) {
  return os << g.to_string();
}

/// U * A * V = D with U, V unimodular and D diagonal with d1 | d2 | ... | dk,
/// followed by zeros.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::vector<Int> invariants;

  std::size_t rank() const { return invariants.size(); }
};

namespace detail {

// Position of the nonzero entry of least absolute value in D[k.., k..].
inline std::optional<std::pair<std::size_t, std::size_t>> min_pivot(const IntMatrix& D, std::size_t k) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t i = k; i < D.rows(); ++i)
    for (std::size_t j = k; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      Int a = abs(D(i, j));
      if (!best || a < best_abs) {
        best = {i, j};
        best_abs = std::move(a);
        if (best_abs == 1) return best;
      }
    }
  return best;
}

}  // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t rows = A.rows();
  const std::size_t cols = A.cols();
  SmithDecomposition out{IntMatrix::identity(rows), A, IntMatrix::identity(cols), {}};
  IntMatrix& U = out.U;
  IntMatrix& D = out.D;
  IntMatrix& V = out.V;

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t k = 0; k < diag; ++k) {
    bool exhausted = false;
    for (;;) {
      auto pivot = detail::min_pivot(D, k);
      if (!pivot) {
        exhausted = true;
        break;
      }
      D.swap_rows(k, pivot->first);
      U.swap_rows(k, pivot->first);
      D.swap_cols(k, pivot->second);
      V.swap_cols(k, pivot->second);

      bool clean = true;
      for (std::size_t i = k + 1; i < rows; ++i) {
        if (D(i, k) == 0) continue;
        Int q = D(i, k) / D(k, k);
        D.add_row(i, k, -q);
        U.add_row(i, k, -q);
        if (D(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < cols; ++j) {
        if (D(k, j) == 0) continue;
        Int q = D(k, j) / D(k, k);
        D.add_col(j, k, -q);
        V.add_col(j, k, -q);
        if (D(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot row and column are clear; enforce divisibility of the rest.
      std::optional<std::size_t> offender;
      for (std::size_t i = k + 1; i < rows && !offender; ++i)
        for (std::size_t j = k + 1; j < cols; ++j)
          if (D(i, j) % D(k, k) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      D.add_row(k, *offender, 1);
      U.add_row(k, *offender, 1);
    }
    if (exhausted) break;
    if (D(k, k) < 0) {
      D.negate_row(k);
      U.negate_row(k);
    }
    out.invariants.push_back(D(k, k));
  }
  return out;
}

inline std::size_t rank(const IntMatrix& A) { return smith_normal_form(A).rank(); }

/// Columns form a saturated basis of {v : A v = 0}.
inline IntMatrix kernel_basis(const IntMatrix& A) {
  auto snf = smith_normal_form(A);
  const std::size_t r = snf.rank();
  IntMatrix K(A.cols(), A.cols() - r);
  for (std::size_t j = r; j < A.cols(); ++j)
    for (std::size_t i = 0; i < A.cols(); ++i) K(i, j - r) = snf.V(i, j);
  return K;
}

/// Invariants of Z^ambient_rank / (column span of gens).
inline AbelianGroupInvariants quotient_invariants(std::size_t ambient_rank, const IntMatrix& gens) {
  if (gens.rows() != ambient_rank)
    throw std::invalid_argument("quotient_invariants: generator matrix has " +
                                std::to_string(gens.rows()) + " rows, expected " +
                                std::to_string(ambient_rank));
  auto snf = smith_normal_form(gens);
  return AbelianGroupInvariants::from_orders(ambient_rank - snf.rank(), snf.invariants);
}

/// x with A x = b when b lies in the integer column span of A.
/// Indices of a maximal linearly independent subset of the rows of A, chosen
/// greedily in row order.
inline std::vector<std::size_t> independent_rows(const IntMatrix& A) {
  std::vector<IntVector> basis;  // echelon rows, content-reduced
  std::vector<std::size_t> pivots, picked;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    IntVector v = A.row(i);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const std::size_t pc = pivots[k];
      if (v[pc] == 0) continue;
      const Int p = basis[k][pc];
      const Int q = v[pc];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = p * v[j] - q * basis[k][j];
    }
    auto lead = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
    if (lead == v.end()) continue;
    Int content = 0;
    for (const auto& x : v) content = gcd(content, x);
    for (auto& x : v) x /= content;
    pivots.push_back(static_cast<std::size_t>(lead - v.begin()));
    basis.push_back(std::move(v));
    picked.push_back(i);
  }
  return picked;
}

namespace detail {

// Unique solution of a square nonsingular system by fraction-free
// Gauss-Jordan elimination; nullopt unless it is integral.
inline std::optional<IntVector> solve_full_rank(const IntMatrix& A, const IntVector& b) {
  const std::size_t n = A.rows();
  IntMatrix M = hstack(A, IntMatrix::from_columns(n, {b}));
  Int prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (M(p, k) == 0) ++p;  // nonsingular, so a pivot exists
    if (p != k) M.swap_rows(p, k);
    const Int pivot = M(k, k);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Int f = M(i, k);
      for (std::size_t j = 0; j <= n; ++j) M(i, j) = (pivot * M(i, j) - f * M(k, j)) / prev;
    }
    prev = pivot;
  }
  // Now M = [det I | det x].
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (M(i, n) % M(i, i) != 0) return std::nullopt;
    x[i] = M(i, n) / M(i, i);
  }
  return x;
}

}  // namespace detail

inline std::optional<IntVector> solve_in_lattice(const IntMatrix& A, const IntVector& b) {
  if (b.size() != A.rows())
    throw std::invalid_argument("solve_in_lattice: right-hand side has length " +
                                std::to_string(b.size()) + ", expected " + std::to_string(A.rows()));
  const auto rows = independent_rows(A);
  if (rows.size() < A.rows()) {
    // Same integer solutions as A x = b whenever the full system is consistent.
    IntMatrix sub(rows.size(), A.cols());
    IntVector sb(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      for (std::size_t j = 0; j < A.cols(); ++j) sub(k, j) = A(rows[k], j);
      sb[k] = b[rows[k]];
    }
    auto x = solve_in_lattice(sub, sb);
    if (!x || A * *x != b) return std::nullopt;
    return x;
  }
  if (rows.size() == A.cols()) return detail::solve_full_rank(A, b);
  auto snf = smith_normal_form(A);
  IntVector c = snf.U * b;
  IntVector y(A.cols(), Int(0));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < snf.rank()) {
      if (c[i] % snf.invariants[i] != 0) return std::nullopt;
      y[i] = c[i] / snf.invariants[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

/// Inverse of a square unimodular matrix; throws if |det| != 1.
inline IntMatrix unimodular_inverse(const IntMatrix& U) {
  if (U.rows() != U.cols()) throw std::invalid_argument("unimodular_inverse: matrix is not square");
  auto snf = smith_normal_form(U);
  if (snf.rank() != U.rows() || (!snf.invariants.empty() && snf.invariants.back() != 1))
    throw std::invalid_argument("unimodular_inverse: matrix is not unimodular");
  // P U Q = I  =>  U^-1 = Q P
  return snf.V * snf.U;
}

/// Invariants of Ker(out_map) / Im(in_map) for a two-step complex.
inline AbelianGroupInvariants subquotient_invariants(const IntMatrix& out_map, const IntMatrix& in_map) {
  if (out_map.cols() != in_map.rows())
    throw std::invalid_argument("subquotient_invariants: maps do not compose (" +
                                std::to_string(out_map.cols()) + " vs " +
                                std::to_string(in_map.rows()) + ")");
  if (!(out_map * in_map).is_zero()) throw std::invalid_argument("not a complex");
  IntMatrix K = kernel_basis(out_map);
  IntMatrix coords(K.cols(), in_map.cols());
  for (std::size_t j = 0; j < in_map.cols(); ++j) {
    auto x = solve_in_lattice(K, in_map.column(j));
    // Kernel basis is saturated, so every kernel vector has integer coordinates.
    if (!x) throw std::logic_error("subquotient_invariants: image escapes kernel lattice");
    for (std::size_t i = 0; i < K.cols(); ++i) coords(i, j) = (*x)[i];
  }
  return quotient_invariants(K.cols(), coords);
}

}  // namespace nilcohom
