#pragma once

#include "nilcohom/cohomology.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nilcohom {

/// Cocycle attached to f in Hom(Lambda^2 L1, Z), stored as f(x_i ^ x_j) over
/// lex pairs. `order` is the order of its class in Coker c^* (0 = infinite).
struct CocycleLemmaX {
  IntVector f;
  Int order = 0;
  friend bool operator==(const CocycleLemmaX&, const CocycleLemmaX&) = default;
};

/// Cocycle attached to phi in Hom(L1 (x) L2 / S, Z), phi(t, l) = phi(x_t (x) y_l).
struct CocycleLemmaY {
  IntMatrix phi;
  friend bool operator==(const CocycleLemmaY&, const CocycleLemmaY&) = default;
};

struct CocycleTerm;

struct CocycleSum {
  std::vector<CocycleTerm> terms;
  friend bool operator==(const CocycleSum&, const CocycleSum&);
};

struct Cocycle {
  std::variant<CocycleLemmaX, CocycleLemmaY, CocycleSum> value;

  Cocycle() : value(CocycleSum{}) {}
  Cocycle(CocycleLemmaX x) : value(std::move(x)) {}
  Cocycle(CocycleLemmaY y) : value(std::move(y)) {}
  Cocycle(CocycleSum s) : value(std::move(s)) {}

  friend bool operator==(const Cocycle&, const Cocycle&) = default;
};

struct CocycleTerm {
  Int coefficient;
  Cocycle cocycle;
  friend bool operator==(const CocycleTerm&, const CocycleTerm&) = default;
};

inline bool operator==(const CocycleSum& a, const CocycleSum& b) { return a.terms == b.terms; }

inline Cocycle scale(const Int& k, Cocycle w) { return CocycleSum{{CocycleTerm{k, std::move(w)}}}; }

inline Cocycle operator+(Cocycle a, Cocycle b) {
  return CocycleSum{{CocycleTerm{1, std::move(a)}, CocycleTerm{1, std::move(b)}}};
}

/// Both coefficient families of an arbitrary combination, obtained by
/// linearity of the evaluation formulas.
struct CocycleCoefficients {
  IntVector f;    // C(n,2)
  IntMatrix phi;  // n x m
};

namespace detail {

inline void accumulate(const GroupPresentation& P, const Cocycle& w, const Int& k, CocycleCoefficients& acc) {
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CocycleLemmaX>) {
          if (c.f.size() != acc.f.size())
            throw std::invalid_argument("cocycle: f has length " + std::to_string(c.f.size()) +
                                        ", expected " + std::to_string(acc.f.size()));
          for (std::size_t q = 0; q < c.f.size(); ++q) acc.f[q] += k * c.f[q];
        } else if constexpr (std::is_same_v<T, CocycleLemmaY>) {
          if (c.phi.rows() != P.n || c.phi.cols() != P.m)
            throw std::invalid_argument("cocycle: phi must be " + std::to_string(P.n) + "x" +
                                        std::to_string(P.m));
          for (std::size_t t = 0; t < P.n; ++t)
            for (std::size_t l = 0; l < P.m; ++l) acc.phi(t, l) += k * c.phi(t, l);
        } else {
          for (const auto& term : c.terms) accumulate(P, term.cocycle, k * term.coefficient, acc);
        }
      },
      w.value);
}

}  // namespace detail

inline CocycleCoefficients flatten(const GroupPresentation& P, const Cocycle& w) {
  CocycleCoefficients acc{zeros(choose(P.n, 2)), IntMatrix(P.n, P.m)};
  detail::accumulate(P, w, 1, acc);
  return acc;
}

/// One factor of a cocycle monomial: C(v, degree) for a coordinate v of g or g'.
struct Factor {
  enum class Var { a, b } var;
  std::size_t index;
  bool primed;
  unsigned degree;  // 1 or 2
};

struct Monomial {
  Int coefficient;
  std::vector<Factor> factors;
};

/// A cocycle expanded into its polynomial in (a, b, a', b'). Monomials appear
/// in a fixed order, which render() inherits.
struct CocyclePolynomial {
  std::vector<Monomial> terms;

  Int operator()(const GroupElement& g, const GroupElement& h) const {
    Int total = 0;
    for (const auto& mono : terms) {
      Int v = mono.coefficient;
      for (const auto& fac : mono.factors) {
        const GroupElement& src = fac.primed ? h : g;
        const Int& x = fac.var == Factor::Var::a ? src.a[fac.index] : src.b[fac.index];
        v *= fac.degree == 1 ? x : binom2(x);
        if (v == 0) break;
      }
      total += v;
    }
    return total;
  }
};

inline CocyclePolynomial expand(const GroupPresentation& P, const Cocycle& w) {
  const auto coeffs = flatten(P, w);
  const std::size_t n = P.n;
  const std::size_t m = P.m;
  using V = Factor::Var;
  auto a = [](std::size_t i) { return Factor{V::a, i, false, 1}; };
  auto ap = [](std::size_t i) { return Factor{V::a, i, true, 1}; };
  auto a2 = [](std::size_t i) { return Factor{V::a, i, false, 2}; };
  auto ap2 = [](std::size_t i) { return Factor{V::a, i, true, 2}; };
  auto b = [](std::size_t j) { return Factor{V::b, j, false, 1}; };

  // phi(x_t (x) c(x_p ^ x_q)) with c extended antisymmetrically.
  std::vector<IntVector> bracket_cache(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) bracket_cache[p * n + q] = P.bracket(p, q);
  auto phic = [&](std::size_t t, std::size_t p, std::size_t q) {
    Int s = 0;
    const IntVector& c = bracket_cache[p * n + q];
    for (std::size_t l = 0; l < m; ++l) s += c[l] * coeffs.phi(t, l);
    return s;
  };

  CocyclePolynomial poly;
  auto emit = [&](Int coeff, std::vector<Factor> f) {
    if (coeff != 0) poly.terms.push_back({std::move(coeff), std::move(f)});
  };

  // -sum_{i<j} a_j a_i' f(x_i ^ x_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) emit(-coeffs.f[pair_index(n, i, j)], {a(j), ap(i)});

  if (coeffs.phi.is_zero()) return poly;

  // -sum_{i>j} C(a_i,2) a_j' phi(x_i (x) c(x_i ^ x_j))
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) emit(-phic(i, i, j), {a2(i), ap(j)});
  // -sum_{i>j} a_i C(a_j',2) phi(x_j (x) c(x_i ^ x_j))
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) emit(-phic(j, i, j), {a(i), ap2(j)});
  // -sum_{k<i<j} a_i a_j a_k' phi(x_j (x) c(x_i ^ x_k))
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) emit(-phic(j, i, k), {a(i), a(j), ap(k)});
  // -sum_{j<i<k} a_i a_j' a_k' phi(x_k (x) c(x_i ^ x_j))
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) emit(-phic(k, i, j), {a(i), ap(j), ap(k)});
  // -sum_{j<k<=i} a_i a_j' a_k' phi(x_k (x) c(x_i ^ x_j))
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      for (std::size_t i = k; i < n; ++i) emit(-phic(k, i, j), {a(i), ap(j), ap(k)});
  // -sum_{i,j} a_i' b_j phi(x_i (x) y_j)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) emit(-coeffs.phi(i, j), {ap(i), b(j)});
  return poly;
}

inline Int eval(const GroupPresentation& P, const Cocycle& w, const GroupElement& g, const GroupElement& h) {
  detail::check_element(P, g, "eval");
  detail::check_element(P, h, "eval");
  return expand(P, w)(g, h);
}

namespace detail {

inline std::string render_factor(const Factor& f) {
  std::string v = (f.var == Factor::Var::a ? "a" : "b") + std::to_string(f.index + 1) + (f.primed ? "'" : "");
  return f.degree == 1 ? v : "C(" + v + "," + std::to_string(f.degree) + ")";
}

inline std::string render_terms(const std::vector<Monomial>& terms) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& mono : terms) {
    const bool negative = mono.coefficient < 0;
    const Int mag = abs(mono.coefficient);
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    if (mono.factors.empty()) {
      os << mag;
    } else {
      if (mag != 1) os << mag << '*';
      for (std::size_t k = 0; k < mono.factors.size(); ++k)
        os << (k ? "*" : "") << render_factor(mono.factors[k]);
    }
    first = false;
  }
  return os.str();
}

}  // namespace detail

/// Canonical polynomial text, e.g. "a2*C(a1',2) - a1'*b1".
inline std::string render(const GroupPresentation& P, const Cocycle& w) {
  return detail::render_terms(expand(P, w).terms);
}

struct Counterexample {
  std::string kind;  // "cocycle identity" or "normalization"
  GroupElement g, h, k;
  Int lhs, rhs;
};

struct VerificationReport {
  bool passed = true;
  std::size_t trials_run = 0;
  std::optional<Counterexample> counterexample;
};

/// Checks w(g,h) + w(gh,k) = w(h,k) + w(g,hk) and w(g,e) = w(e,g) = 0 on random
/// triples. Trial t draws from the stream (seed, t).
inline VerificationReport verify_cocycle(const GroupPresentation& P, const Cocycle& w, std::size_t trials,
                                         std::int64_t bound, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_cocycle: trials must be >= 1");
  const auto poly = expand(P, w);
  const auto e = GroupElement::identity(P);
  VerificationReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSampler sample(P, bound, seed, t);
    const auto g = sample();
    const auto h = sample();
    const auto k = sample();
    ++rep.trials_run;
    const Int right_unit = poly(g, e);
    const Int left_unit = poly(e, g);
    if (right_unit != 0 || left_unit != 0) {
      rep.passed = false;
      rep.counterexample = Counterexample{"normalization", g, e, e, left_unit, right_unit};
      return rep;
    }
    const Int lhs = poly(g, h) + poly(multiply(P, g, h), k);
    const Int rhs = poly(h, k) + poly(g, multiply(P, h, k));
    if (lhs != rhs) {
      rep.passed = false;
      rep.counterexample = Counterexample{"cocycle identity", g, h, k, lhs, rhs};
      return rep;
    }
  }
  return rep;
}

/// Lifts to Hom(Lambda^2 L1, Z) of a generating set of Coker c^*: torsion
/// generators first (in invariant-factor order), then infinite-order ones.
inline std::vector<CocycleLemmaX> lemmax_generators(const GroupPresentation& P) {
  require_valid(P);
  const std::size_t wedge2 = choose(P.n, 2);
  const IntMatrix ct = bracket_matrix(P).transpose();
  const auto snf = smith_normal_form(ct);
  // U c^T V = D, so column k of U^-1 generates a cyclic summand of order d_k.
  const IntMatrix U_inv = unimodular_inverse(snf.U);
  std::vector<CocycleLemmaX> gens;
  for (std::size_t k = 0; k < wedge2; ++k) {
    Int order = k < snf.rank() ? snf.invariants[k] : Int(0);
    if (order == 1) continue;
    gens.push_back({U_inv.column(k), order});
  }
  return gens;
}

/// Integer basis of the phi annihilating every column of the Jacobi matrix.
inline std::vector<CocycleLemmaY> lemmay_basis(const GroupPresentation& P) {
  require_valid(P);
  const IntMatrix K = kernel_basis(jacobi_s_matrix(P).transpose());
  std::vector<CocycleLemmaY> basis;
  for (std::size_t col = 0; col < K.cols(); ++col) {
    IntMatrix phi(P.n, P.m);
    for (std::size_t t = 0; t < P.n; ++t)
      for (std::size_t l = 0; l < P.m; ++l) phi(t, l) = K(tensor_index(P.m, t, l), col);
    basis.push_back({std::move(phi)});
  }
  return basis;
}

/// All produced generators as Cocycles, Lemma-X kind first.
inline std::vector<Cocycle> all_generators(const GroupPresentation& P) {
  std::vector<Cocycle> out;
  for (auto& x : lemmax_generators(P)) out.emplace_back(std::move(x));
  for (auto& y : lemmay_basis(P)) out.emplace_back(std::move(y));
  return out;
}

class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtensionElement {
  GroupElement g;
  IntVector t;
  friend bool operator==(const ExtensionElement&, const ExtensionElement&) = default;
};

/// Central extension 0 -> Z^r -> E -> G -> 1 with one fiber cocycle per
/// coordinate of Z^r: (g,t)(g',t') = (gg', t + t' + w(g,g')).
class ExtensionGroup {
 public:
  static constexpr std::size_t kSpotTrials = 64;

  ExtensionGroup(GroupPresentation base, std::vector<Cocycle> fibers)
      : base_(std::move(base)), fibers_(std::move(fibers)) {
    for (std::size_t k = 0; k < fibers_.size(); ++k) {
      auto rep = verify_cocycle(base_, fibers_[k], kSpotTrials, 5, k);
      if (!rep.passed)
        throw VerificationFailed("build_extension: fiber " + std::to_string(k) + " fails the " +
                                 rep.counterexample->kind);
      polys_.push_back(expand(base_, fibers_[k]));
    }
  }

  const GroupPresentation& base() const { return base_; }
  const std::vector<Cocycle>& fibers() const { return fibers_; }
  std::size_t fiber_rank() const { return fibers_.size(); }

  ExtensionElement identity() const { return {GroupElement::identity(base_), zeros(fibers_.size())}; }

  ExtensionElement multiply(const ExtensionElement& x, const ExtensionElement& y) const {
    check(x);
    check(y);
    ExtensionElement out{nilcohom::multiply(base_, x.g, y.g), x.t};
    for (std::size_t k = 0; k < fibers_.size(); ++k) out.t[k] += y.t[k] + polys_[k](x.g, y.g);
    return out;
  }

  ExtensionElement inverse(const ExtensionElement& x) const {
    check(x);
    ExtensionElement out{nilcohom::inverse(base_, x.g), zeros(fibers_.size())};
    for (std::size_t k = 0; k < fibers_.size(); ++k) out.t[k] = -x.t[k] - polys_[k](x.g, out.g);
    return out;
  }

 private:
  void check(const ExtensionElement& x) const {
    if (x.t.size() != fibers_.size())
      throw std::invalid_argument("extension element has " + std::to_string(x.t.size()) +
                                  " fiber coordinates, expected " + std::to_string(fibers_.size()));
  }

  GroupPresentation base_;
  std::vector<Cocycle> fibers_;
  std::vector<CocyclePolynomial> polys_;
};

inline ExtensionGroup build_extension(const GroupPresentation& P, std::vector<Cocycle> fibers) {
  return ExtensionGroup(P, std::move(fibers));
}

struct ExtensionCheckReport {
  bool associative = true;
  bool inverses = true;
  bool identity = true;
  std::size_t trials_run = 0;
  bool passed() const { return associative && inverses && identity; }
};

/// Associativity, two-sided inverses and identity on random triples.
inline ExtensionCheckReport check_extension(const ExtensionGroup& E, std::size_t trials, std::int64_t bound,
                                            std::uint64_t seed) {
  ExtensionCheckReport rep;
  const auto e = E.identity();
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSampler sample(E.base(), bound, seed, t);
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    auto draw = [&] {
      ExtensionElement x{sample(), zeros(E.fiber_rank())};
      for (auto& v : x.t) v = dist(sample.engine());
      return x;
    };
    const auto x = draw();
    const auto y = draw();
    const auto z = draw();
    ++rep.trials_run;
    if (E.multiply(E.multiply(x, y), z) != E.multiply(x, E.multiply(y, z))) rep.associative = false;
    const auto xi = E.inverse(x);
    if (E.multiply(x, xi) != e || E.multiply(xi, x) != e) rep.inverses = false;
    if (E.multiply(x, e) != x || E.multiply(e, x) != x) rep.identity = false;
    if (!rep.passed()) break;
  }
  return rep;
}

/// Integer-valued polynomial u(a, b) in the binomial basis
/// prod_i C(a_i, e_i) prod_j C(b_j, f_j).
struct WitnessPolynomial {
  struct Term {
    Int coefficient;
    std::vector<unsigned> a_degrees;
    std::vector<unsigned> b_degrees;
  };
  std::vector<Term> terms;

  Int operator()(const GroupElement& g) const {
    Int total = 0;
    for (const auto& term : terms) total += term.coefficient * basis_value(term, g);
    return total;
  }

  static Int basis_value(const Term& term, const GroupElement& g) {
    Int v = 1;
    for (std::size_t i = 0; i < term.a_degrees.size() && v != 0; ++i)
      if (term.a_degrees[i]) v *= binom(g.a[i], term.a_degrees[i]);
    for (std::size_t j = 0; j < term.b_degrees.size() && v != 0; ++j)
      if (term.b_degrees[j]) v *= binom(g.b[j], term.b_degrees[j]);
    return v;
  }

  std::string render() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& term : terms) {
      const bool negative = term.coefficient < 0;
      const Int mag = abs(term.coefficient);
      os << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
      if (mag != 1) os << mag << '*';
      bool first_factor = true;
      auto factor = [&](char var, std::size_t idx, unsigned deg) {
        if (!deg) return;
        os << (first_factor ? "" : "*");
        const std::string v = var + std::to_string(idx + 1);
        if (deg == 1)
          os << v;
        else
          os << "C(" << v << ',' << deg << ')';
        first_factor = false;
      };
      for (std::size_t i = 0; i < term.a_degrees.size(); ++i) factor('a', i, term.a_degrees[i]);
      for (std::size_t j = 0; j < term.b_degrees.size(); ++j) factor('b', j, term.b_degrees[j]);
      first = false;
    }
    return os.str();
  }
};

namespace detail {

// Exponent vectors with sum(a) + 2 sum(b) in [1, max_weight], graded then lex.
inline std::vector<WitnessPolynomial::Term> witness_ansatz(const GroupPresentation& P, unsigned max_weight) {
  std::vector<WitnessPolynomial::Term> out;
  const std::size_t vars = P.n + P.m;
  std::vector<unsigned> deg(vars, 0);
  for (unsigned w = 1; w <= max_weight; ++w) {
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned remaining) {
      if (pos == vars) {
        if (remaining == 0)
          out.push_back({0, std::vector<unsigned>(deg.begin(), deg.begin() + static_cast<std::ptrdiff_t>(P.n)),
                         std::vector<unsigned>(deg.begin() + static_cast<std::ptrdiff_t>(P.n), deg.end())});
        return;
      }
      const unsigned weight = pos < P.n ? 1 : 2;
      for (unsigned d = remaining / weight + 1; d-- > 0;) {
        deg[pos] = d;
        rec(pos + 1, remaining - d * weight);
      }
      deg[pos] = 0;
    };
    rec(0, w);
  }
  return out;
}

}  // namespace detail

/// Searches for u with u(g) + u(g') - u(gg') = w(g, g') among integer-valued
/// polynomials of weighted degree <= max_weight (a_i weight 1, b_j weight 2).
/// A returned witness has been confirmed on `trials` fresh pairs. Absence does
/// not certify that w is cohomologically nontrivial.
inline std::optional<WitnessPolynomial> coboundary_witness(const GroupPresentation& P, const Cocycle& w,
                                                           unsigned max_weight, std::size_t trials,
                                                           std::uint64_t seed) {
  if (max_weight < 1) throw std::invalid_argument("coboundary_witness: max_weight must be >= 1");
  const auto poly = expand(P, w);
  if (poly.terms.empty()) return WitnessPolynomial{};

  // Linear terms a_i are additive and never contribute to u(g) + u(g') - u(gg').
  auto ansatz = detail::witness_ansatz(P, max_weight);
  std::erase_if(ansatz, [](const WitnessPolynomial::Term& term) {
    unsigned a = 0, b = 0;
    for (auto d : term.a_degrees) a += d;
    for (auto d : term.b_degrees) b += d;
    return a == 1 && b == 0;
  });
  const std::size_t unknowns = ansatz.size();
  const std::size_t samples = 3 * unknowns + 8;
  IntMatrix A(samples, unknowns);
  IntVector rhs(samples);
  {
    ElementSampler sample(P, 4, seed);
    for (std::size_t s = 0; s < samples; ++s) {
      const auto g = sample();
      const auto h = sample();
      const auto gh = multiply(P, g, h);
      for (std::size_t k = 0; k < unknowns; ++k)
        A(s, k) = WitnessPolynomial::basis_value(ansatz[k], g) + WitnessPolynomial::basis_value(ansatz[k], h) -
                  WitnessPolynomial::basis_value(ansatz[k], gh);
      rhs[s] = poly(g, h);
    }
  }
  auto x = solve_in_lattice(A, rhs);
  if (!x) return std::nullopt;

  WitnessPolynomial u;
  for (std::size_t k = 0; k < unknowns; ++k)
    if ((*x)[k] != 0) {
      ansatz[k].coefficient = (*x)[k];
      u.terms.push_back(std::move(ansatz[k]));
    }

  // Fresh validation stream, disjoint from the fitting samples.
  for (std::size_t t = 0; t < trials; ++t) {
    ElementSampler sample(P, 10, seed, t + 1);
    const auto g = sample();
    const auto h = sample();
    if (u(g) + u(h) - u(multiply(P, g, h)) != poly(g, h)) return std::nullopt;
  }
  return u;
}

}  // namespace nilcohom
