#pragma once

#include "nilcohom/grouplaw.hpp"

#include <ostream>
#include <stdexcept>

namespace nilcohom {

/// Coordinates in the PBW basis of the truncated augmentation quotient IG / I^3:
/// degree-one classes of x_i, quadratic products x_i x_j (i <= j, lex order), and
/// the classes of y_j. Everything of filtration degree >= 3 is absent by
/// construction.
struct PassiElement {
  IntVector lin_x;
  IntVector quad;
  IntVector lin_y;

  static PassiElement zero(const GroupPresentation& P) {
    return {zeros(P.n), zeros(P.n * (P.n + 1) / 2), zeros(P.m)};
  }

  PassiElement& operator+=(const PassiElement& o) {
    for (std::size_t i = 0; i < lin_x.size(); ++i) lin_x[i] += o.lin_x[i];
    for (std::size_t i = 0; i < quad.size(); ++i) quad[i] += o.quad[i];
    for (std::size_t i = 0; i < lin_y.size(); ++i) lin_y[i] += o.lin_y[i];
    return *this;
  }
  PassiElement& operator-=(const PassiElement& o) {
    for (std::size_t i = 0; i < lin_x.size(); ++i) lin_x[i] -= o.lin_x[i];
    for (std::size_t i = 0; i < quad.size(); ++i) quad[i] -= o.quad[i];
    for (std::size_t i = 0; i < lin_y.size(); ++i) lin_y[i] -= o.lin_y[i];
    return *this;
  }
  friend PassiElement operator+(PassiElement a, const PassiElement& b) { return a += b; }
  friend PassiElement operator-(PassiElement a, const PassiElement& b) { return a -= b; }

  bool is_zero() const { return nilcohom::is_zero(lin_x) && nilcohom::is_zero(quad) && nilcohom::is_zero(lin_y); }

  friend bool operator==(const PassiElement&, const PassiElement&) = default;
};

/// Index of x_i x_j (i <= j) in PassiElement::quad.
inline std::size_t quad_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline std::ostream& operator<<(std::ostream& os, const PassiElement& u) {
  auto vec = [&](const IntVector& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << "{x=";
  vec(u.lin_x);
  os << " xx=";
  vec(u.quad);
  os << " y=";
  vec(u.lin_y);
  return os << '}';
}

namespace detail {

inline void check_passi(const GroupPresentation& P, const PassiElement& u) {
  if (u.lin_x.size() != P.n || u.quad.size() != P.n * (P.n + 1) / 2 || u.lin_y.size() != P.m)
    throw std::invalid_argument("passi element does not match presentation");
}

}  // namespace detail

/// Image of g under the universal derivation G -> IG / I^3.
inline PassiElement p2(const GroupPresentation& P, const GroupElement& g) {
  detail::check_element(P, g, "p2");
  PassiElement u = PassiElement::zero(P);
  u.lin_x = g.a;
  u.lin_y = g.b;
  for (std::size_t i = 0; i < P.n; ++i) {
    u.quad[quad_index(P.n, i, i)] = binom2(g.a[i]);
    for (std::size_t j = i + 1; j < P.n; ++j) u.quad[quad_index(P.n, i, j)] = g.a[i] * g.a[j];
  }
  return u;
}

/// Truncated product. Only degree-one x parts multiply; x_i x_j with i > j is
/// rewritten as x_j x_i + [x_i, x_j].
inline PassiElement p2_mul(const GroupPresentation& P, const PassiElement& u, const PassiElement& v) {
  detail::check_passi(P, u);
  detail::check_passi(P, v);
  PassiElement w = PassiElement::zero(P);
  for (std::size_t i = 0; i < P.n; ++i) {
    if (u.lin_x[i] == 0) continue;
    for (std::size_t j = 0; j < P.n; ++j) {
      if (v.lin_x[j] == 0) continue;
      const Int coeff = u.lin_x[i] * v.lin_x[j];
      w.quad[quad_index(P.n, i, j)] += coeff;
      if (i > j) {
        const IntVector c = P.bracket(i, j);
        for (std::size_t l = 0; l < P.m; ++l) w.lin_y[l] += coeff * c[l];
      }
    }
  }
  return w;
}

}  // namespace nilcohom
