#pragma once

#include "nilcohom/grouplaw.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilcohom {

// Basis orderings shared by every matrix and cocycle coordinate:
//   Lambda^2 L1 : pairs (i, j), i < j, lex
//   Lambda^3 L1 : triples (i, j, k), i < j < k, lex
//   L1 (x) L2   : (t, l) row-major, index t * m + l

inline std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
  // Pairs before row i: sum_{t < i} (n - 1 - t).
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

inline std::vector<std::pair<std::size_t, std::size_t>> pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

inline std::vector<std::array<std::size_t, 3>> triples(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

inline std::size_t tensor_index(std::size_t m, std::size_t t, std::size_t l) { return t * m + l; }

class InvalidPresentation : public std::invalid_argument {
 public:
  explicit InvalidPresentation(ValidationReport report)
      : std::invalid_argument(join(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  static std::string join(const ValidationReport& r) {
    std::string s = "invalid presentation";
    for (const auto& f : r.failures) s += ": " + f;
    return s;
  }
  ValidationReport report_;
};

inline void require_valid(const GroupPresentation& P) {
  auto report = validate(P);
  if (!report.accepted()) throw InvalidPresentation(std::move(report));
}

/// Matrix of the Jacobi map Lambda^3 L1 -> L1 (x) L2 whose image is S:
/// x_i (x) c(x_j ^ x_k) + x_j (x) c(x_k ^ x_i) + x_k (x) c(x_i ^ x_j).
inline IntMatrix jacobi_s_matrix(const GroupPresentation& P) {
  const auto ts = triples(P.n);
  IntMatrix S(P.n * P.m, ts.size());
  for (std::size_t col = 0; col < ts.size(); ++col) {
    const auto [i, j, k] = ts[col];
    const std::array<std::array<std::size_t, 3>, 3> terms{{{i, j, k}, {j, k, i}, {k, i, j}}};
    for (const auto& [t, p, q] : terms) {
      const IntVector c = P.bracket(p, q);
      for (std::size_t l = 0; l < P.m; ++l) S(tensor_index(P.m, t, l), col) += c[l];
    }
  }
  return S;
}

struct H2Report {
  std::size_t coeff_rank = 1;
  AbelianGroupInvariants total;
  AbelianGroupInvariants coker_cstar;
  std::size_t hom_part_rank = 0;
  std::size_t ker_c_rank = 0;
  AbelianGroupInvariants ext_part;
  AbelianGroupInvariants crosscheck;
  bool agree = false;

  /// Hom(Ker c, Z^r) (+) Hom(L1 (x) L2 / S, Z^r) (+) Ext(Coker c, Z^r).
  AbelianGroupInvariants second_form() const {
    return AbelianGroupInvariants::free(coeff_rank * ker_c_rank + hom_part_rank) + ext_part;
  }
};

inline AbelianGroupInvariants h1(const GroupPresentation& P, std::size_t r) {
  require_valid(P);
  return AbelianGroupInvariants::free(r * P.n);
}

namespace detail {

struct TruncatedComplex {
  IntMatrix first;   // Lambda^3 L1 -> (L1 (x) L2) (+) Lambda^2 L1
  IntMatrix second;  // (L1 (x) L2) (+) Lambda^2 L1 -> L1 (+) L2
};

inline TruncatedComplex truncated_complex(const GroupPresentation& P) {
  const std::size_t tensor = P.n * P.m;
  const std::size_t wedge2 = choose(P.n, 2);
  const std::size_t wedge3 = choose(P.n, 3);
  TruncatedComplex cx{vstack(jacobi_s_matrix(P), IntMatrix(wedge2, wedge3)),
                      IntMatrix(P.n + P.m, tensor + wedge2)};
  const IntMatrix c = bracket_matrix(P);
  for (std::size_t l = 0; l < P.m; ++l)
    for (std::size_t q = 0; q < wedge2; ++q) cx.second(P.n + l, tensor + q) = c(l, q);
  if (!(cx.second * cx.first).is_zero()) throw std::logic_error("not a complex");
  return cx;
}

}  // namespace detail

/// Degree-two cohomology of Hom(-, Z^r) applied to the truncated
/// Chevalley-Eilenberg complex of the graded Lie ring.
inline AbelianGroupInvariants h2_via_complex(const GroupPresentation& P, std::size_t r) {
  require_valid(P);
  const auto cx = detail::truncated_complex(P);
  return subquotient_invariants(cx.first.transpose().repeat_diagonal(r),
                                cx.second.transpose().repeat_diagonal(r));
}

/// Degree-one cohomology of the same complex; the incoming map is zero.
inline AbelianGroupInvariants h1_via_complex(const GroupPresentation& P, std::size_t r) {
  require_valid(P);
  const auto cx = detail::truncated_complex(P);
  const IntMatrix out = cx.second.transpose().repeat_diagonal(r);
  return subquotient_invariants(out, IntMatrix(out.cols(), 0));
}

inline H2Report h2(const GroupPresentation& P, std::size_t r) {
  require_valid(P);
  const IntMatrix c = bracket_matrix(P);
  const std::size_t wedge2 = choose(P.n, 2);
  const auto c_snf = smith_normal_form(c);

  H2Report rep;
  rep.coeff_rank = r;
  rep.coker_cstar = quotient_invariants(wedge2, c.transpose()).repeat(r);
  rep.ker_c_rank = wedge2 - c_snf.rank();
  rep.hom_part_rank = r * (P.n * P.m - rank(jacobi_s_matrix(P)));
  rep.ext_part = quotient_invariants(P.m, c).torsion_part().repeat(r);
  rep.total = rep.coker_cstar + AbelianGroupInvariants::free(rep.hom_part_rank);
  rep.crosscheck = h2_via_complex(P, r);
  rep.agree = rep.crosscheck == rep.total;
  return rep;
}

/// Free rank of H_2(G), i.e. of Ker c (+) (L1 (x) L2)/S.
inline std::size_t second_homology_rank(const GroupPresentation& P) {
  require_valid(P);
  return choose(P.n, 2) - rank(bracket_matrix(P)) + P.n * P.m - rank(jacobi_s_matrix(P));
}

}  // namespace nilcohom
