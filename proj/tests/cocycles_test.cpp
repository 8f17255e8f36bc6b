#include "nilcohom/cocycles.hpp"
#include "nilcohom/families.hpp"

#include <gtest/gtest.h>

#include <cctype>
#include <random>

using namespace nilcohom;

namespace {

GroupElement elem(std::initializer_list<long long> a, std::initializer_list<long long> b) {
  return {IntVector(a.begin(), a.end()), IntVector(b.begin(), b.end())};
}

CocycleLemmaY unit_phi(std::size_t n, std::size_t m, std::size_t t, std::size_t l) {
  IntMatrix phi(n, m);
  phi(t, l) = 1;
  return {phi};
}

CocycleLemmaX unit_f(std::size_t n, std::size_t i, std::size_t j) {
  IntVector f(choose(n, 2), Int(0));
  f[pair_index(n, i, j)] = 1;
  return {f, 0};
}

// Term-by-term evaluation of the five-sum formula, written independently of expand().
Int direct_lemmay(const GroupPresentation& P, const IntMatrix& phi, const GroupElement& g, const GroupElement& h) {
  const std::size_t n = P.n;
  const auto& a = g.a;
  const auto& ap = h.a;
  auto Phi = [&](std::size_t t, std::size_t p, std::size_t q) {
    Int s = 0;
    const auto y = P.bracket(p, q);
    for (std::size_t l = 0; l < P.m; ++l) s += y[l] * phi(t, l);
    return s;
  };
  Int v = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      v -= binom2(a[i]) * ap[j] * Phi(i, i, j);
      v -= a[i] * binom2(ap[j]) * Phi(j, i, j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (k < i && i < j) v -= a[i] * a[j] * ap[k] * Phi(j, i, k);
        if (j < i && i < k) v -= a[i] * ap[j] * ap[k] * Phi(k, i, j);
        if (j < k && k <= i) v -= a[i] * ap[j] * ap[k] * Phi(k, i, j);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < P.m; ++j) v -= ap[i] * g.b[j] * phi(i, j);
  return v;
}

Int direct_lemmax(const GroupPresentation& P, const IntVector& f, const GroupElement& g, const GroupElement& h) {
  Int v = 0;
  for (std::size_t i = 0; i < P.n; ++i)
    for (std::size_t j = i + 1; j < P.n; ++j) v -= g.a[j] * h.a[i] * f[pair_index(P.n, i, j)];
  return v;
}

// Minimal evaluator for render() output: sums of signed products of integers,
// variables a1, b2', ... and C(var,2).
class RenderedPolynomial {
 public:
  RenderedPolynomial(std::string text, const GroupElement& g, const GroupElement& h)
      : s_(std::move(text)), g_(g), h_(h) {}

  Int value() {
    skip();
    Int total = 0;
    bool negative = accept('-');
    for (;;) {
      Int t = product();
      total += negative ? -t : t;
      skip();
      if (pos_ == s_.size()) return total;
      if (accept('+'))
        negative = false;
      else if (accept('-'))
        negative = true;
      else
        throw std::runtime_error("unexpected '" + std::string(1, s_[pos_]) + "' in " + s_);
    }
  }

 private:
  Int product() {
    Int v = factor();
    while (accept('*')) v *= factor();
    return v;
  }

  Int factor() {
    skip();
    if (s_.compare(pos_, 2, "C(") == 0) {
      pos_ += 2;
      Int x = variable();
      expect(',');
      Int k = integer();
      expect(')');
      return binom(x, static_cast<unsigned>(*to_int64(k)));
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return integer();
    return variable();
  }

  Int variable() {
    skip();
    const char kind = s_.at(pos_++);
    const std::size_t idx = static_cast<std::size_t>(*to_int64(integer())) - 1;
    const bool primed = accept('\'');
    const GroupElement& src = primed ? h_ : g_;
    if (kind == 'a') return src.a.at(idx);
    if (kind == 'b') return src.b.at(idx);
    throw std::runtime_error("bad variable in " + s_);
  }

  Int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw std::runtime_error("expected integer in " + s_);
    return Int(s_.substr(start, pos_ - start));
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw std::runtime_error(std::string("expected '") + c + "' in " + s_);
  }

  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }

  std::string s_;
  std::size_t pos_ = 0;
  const GroupElement& g_;
  const GroupElement& h_;
};

std::vector<GroupPresentation> corpus() {
  return {families::heisenberg(),
          families::paper_example({2, 4}),
          families::paper_example({3, 3, 6}),
          families::abelian(4),
          families::random(4, 2, 5, 3),
          families::random(5, 3, 5, 4),
          families::random(5, 2, 3, 5)};
}

// A random integer phi on L1 (x) L2, usually not annihilating S.
CocycleLemmaY random_phi(const GroupPresentation& P, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  IntMatrix phi(P.n, P.m);
  for (std::size_t t = 0; t < P.n; ++t)
    for (std::size_t l = 0; l < P.m; ++l) phi(t, l) = d(rng);
  return {phi};
}

}  // namespace

TEST(Eval, KnownValues) {
  const auto H = families::heisenberg();
  const Cocycle fx = unit_f(2, 0, 1);
  const Cocycle phi = unit_phi(2, 1, 0, 0);
  EXPECT_EQ(eval(H, fx, GroupElement::x(H, 1), GroupElement::x(H, 0)), -1);
  EXPECT_EQ(eval(H, phi, GroupElement::y(H, 0), GroupElement::x(H, 0)), -1);
  EXPECT_EQ(eval(H, phi, GroupElement::x(H, 1), GroupElement::x(H, 0, 2)), 1);
  for (const Cocycle& w : {fx, phi}) EXPECT_EQ(eval(H, w, elem({4, -7}, {3}), GroupElement::identity(H)), 0);
}

TEST(Eval, DimensionMismatch) {
  const auto H = families::heisenberg();
  const Cocycle bad_f = CocycleLemmaX{{1, 2}, 0};
  const Cocycle bad_phi = CocycleLemmaY{IntMatrix(3, 1)};
  const auto g = GroupElement::identity(H);
  EXPECT_THROW(eval(H, bad_f, g, g), std::invalid_argument);
  EXPECT_THROW(eval(H, bad_phi, g, g), std::invalid_argument);
  EXPECT_THROW(eval(H, Cocycle(unit_f(2, 0, 1)), elem({1}, {0}), g), std::invalid_argument);
}

TEST(Eval, MatchesDirectFormula) {
  std::mt19937_64 rng(77);
  for (const auto& P : corpus()) {
    ElementSampler sample(P, 10, 13);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int rep = 0; rep < 5; ++rep) {
      const auto y = random_phi(P, rng);
      IntVector f(choose(P.n, 2));
      for (auto& v : f) v = d(rng);
      for (int t = 0; t < 200; ++t) {
        const auto g = sample();
        const auto h = sample();
        ASSERT_EQ(eval(P, Cocycle(y), g, h), direct_lemmay(P, y.phi, g, h));
        ASSERT_EQ(eval(P, Cocycle(CocycleLemmaX{f, 0}), g, h), direct_lemmax(P, f, g, h));
      }
    }
  }
}

TEST(Eval, Linearity) {
  std::mt19937_64 rng(78);
  for (const auto& P : corpus()) {
    const auto gens = all_generators(P);
    if (gens.size() < 2) continue;
    const Cocycle combo = scale(3, gens[0]) + scale(-2, gens[1]);
    const Cocycle nested = scale(2, combo) + gens[0];
    ElementSampler sample(P, 10, 14);
    for (int t = 0; t < 200; ++t) {
      const auto g = sample();
      const auto h = sample();
      const Int w0 = eval(P, gens[0], g, h);
      const Int w1 = eval(P, gens[1], g, h);
      ASSERT_EQ(eval(P, combo, g, h), 3 * w0 - 2 * w1);
      ASSERT_EQ(eval(P, nested, g, h), 7 * w0 - 4 * w1);
    }
  }
}

TEST(Eval, Normalized) {
  for (const auto& P : corpus()) {
    ElementSampler sample(P, 10, 15);
    const auto e = GroupElement::identity(P);
    for (const auto& w : all_generators(P))
      for (int t = 0; t < 50; ++t) {
        const auto g = sample();
        ASSERT_EQ(eval(P, w, g, e), 0);
        ASSERT_EQ(eval(P, w, e, g), 0);
      }
  }
}

TEST(Render, KnownValues) {
  const auto H = families::heisenberg();
  EXPECT_EQ(render(H, unit_phi(2, 1, 0, 0)), "a2*C(a1',2) - a1'*b1");
  EXPECT_EQ(render(H, Cocycle()), "0");
  EXPECT_EQ(render(H, unit_f(2, 0, 1)), "-a2*a1'");
  EXPECT_EQ(render(H, CocycleLemmaX{{0}, 0}), "0");
}

TEST(Render, AgreesWithEvalOnSampledPoints) {
  std::mt19937_64 rng(79);
  for (const auto& P : corpus()) {
    std::vector<Cocycle> ws = all_generators(P);
    ws.push_back(random_phi(P, rng));
    if (ws.size() >= 2) ws.push_back(scale(-5, ws[0]) + ws[1]);
    ElementSampler sample(P, 10, 16);
    for (const auto& w : ws) {
      const std::string text = render(P, w);
      EXPECT_EQ(text, render(P, w));
      for (int t = 0; t < 100; ++t) {
        const auto g = sample();
        const auto h = sample();
        ASSERT_EQ(RenderedPolynomial(text, g, h).value(), eval(P, w, g, h)) << text;
      }
    }
  }
}

TEST(VerifyCocycle, ProducedCocyclesPass) {
  EXPECT_TRUE(verify_cocycle(families::heisenberg(), unit_phi(2, 1, 0, 0), 1000, 10, 0).passed);
  for (const auto& P : corpus())
    for (const auto& w : all_generators(P)) {
      const auto rep = verify_cocycle(P, w, 300, 10, 1);
      EXPECT_TRUE(rep.passed) << render(P, w);
      EXPECT_EQ(rep.trials_run, 300u);
    }
}

TEST(VerifyCocycle, CorruptedPhiFailsWithWitness) {
  const auto P = families::paper_example({2, 4});
  // x2 (x) z is hit by the Jacobi column of (x1, x2, y1), so this phi does not vanish on S.
  const Cocycle bad = unit_phi(4, 1, 1, 0);
  const auto rep = verify_cocycle(P, bad, 1000, 10, 0);
  ASSERT_FALSE(rep.passed);
  ASSERT_TRUE(rep.counterexample.has_value());
  const auto& c = *rep.counterexample;
  EXPECT_EQ(c.kind, "cocycle identity");
  EXPECT_NE(c.lhs, c.rhs);
  const Int lhs = eval(P, bad, c.g, c.h) + eval(P, bad, multiply(P, c.g, c.h), c.k);
  const Int rhs = eval(P, bad, c.h, c.k) + eval(P, bad, c.g, multiply(P, c.h, c.k));
  EXPECT_NE(lhs, rhs);
  EXPECT_THROW(verify_cocycle(P, bad, 0, 10, 0), std::invalid_argument);
}

TEST(VerifyCocycle, Deterministic) {
  const auto P = families::paper_example({2, 4});
  const Cocycle bad = unit_phi(4, 1, 1, 0);
  const auto r1 = verify_cocycle(P, bad, 1000, 10, 3);
  const auto r2 = verify_cocycle(P, bad, 1000, 10, 3);
  ASSERT_TRUE(r1.counterexample && r2.counterexample);
  EXPECT_EQ(r1.trials_run, r2.trials_run);
  EXPECT_EQ(r1.counterexample->g, r2.counterexample->g);
}

TEST(Generators, KnownCounts) {
  const auto H = families::heisenberg();
  EXPECT_TRUE(lemmax_generators(H).empty());
  EXPECT_EQ(lemmay_basis(H).size(), 2u);

  const auto P = families::paper_example({2, 4});
  EXPECT_TRUE(lemmay_basis(P).empty());
  const auto xs = lemmax_generators(P);
  ASSERT_EQ(xs.size(), 6u);
  EXPECT_EQ(xs[0].order, 2);
  for (std::size_t k = 1; k < xs.size(); ++k) EXPECT_EQ(xs[k].order, 0);

  EXPECT_TRUE(lemmay_basis(families::abelian(3)).empty());
  EXPECT_EQ(lemmax_generators(families::abelian(3)).size(), 3u);
}

TEST(Generators, CountsMatchCohomology) {
  for (const auto& P : corpus()) {
    const auto rep = h2(P, 1);
    std::size_t infinite = 0;
    std::vector<Int> orders;
    for (const auto& x : lemmax_generators(P)) {
      if (x.order == 0)
        ++infinite;
      else
        orders.push_back(x.order);
    }
    EXPECT_EQ(infinite, rep.ker_c_rank);
    EXPECT_EQ(lemmay_basis(P).size(), P.n * P.m - rank(jacobi_s_matrix(P)));
    EXPECT_EQ(infinite + lemmay_basis(P).size(), rep.total.free_rank());
    EXPECT_EQ(orders, rep.total.torsion());
  }
}

TEST(Generators, LemmaYAnnihilatesJacobiColumns) {
  for (const auto& P : corpus()) {
    const auto S = jacobi_s_matrix(P);
    for (const auto& y : lemmay_basis(P))
      for (std::size_t col = 0; col < S.cols(); ++col) {
        Int s = 0;
        for (std::size_t t = 0; t < P.n; ++t)
          for (std::size_t l = 0; l < P.m; ++l) s += y.phi(t, l) * S(tensor_index(P.m, t, l), col);
        EXPECT_EQ(s, 0);
      }
  }
}

TEST(Extension, ProducedCocyclesGiveGroups) {
  for (const auto& P : corpus())
    for (const auto& w : all_generators(P)) {
      const auto E = build_extension(P, {w});
      const auto rep = check_extension(E, 300, 10, 2);
      EXPECT_TRUE(rep.passed()) << render(P, w);
      EXPECT_EQ(rep.trials_run, 300u);
    }
}

TEST(Extension, EmptyFiberListIsBaseGroup) {
  const auto P = families::paper_example({2, 4});
  const auto E = build_extension(P, {});
  EXPECT_EQ(E.fiber_rank(), 0u);
  ElementSampler sample(P, 10, 3);
  for (int t = 0; t < 100; ++t) {
    const ExtensionElement x{sample(), {}};
    const ExtensionElement y{sample(), {}};
    const auto z = E.multiply(x, y);
    EXPECT_EQ(z.g, multiply(P, x.g, y.g));
    EXPECT_TRUE(z.t.empty());
  }
  EXPECT_TRUE(check_extension(E, 200, 10, 0).passed());
}

TEST(Extension, TwoFibersActComponentwise) {
  const auto H = families::heisenberg();
  const auto ys = lemmay_basis(H);
  ASSERT_EQ(ys.size(), 2u);
  const auto E = build_extension(H, {ys[0], ys[1]});
  const auto E0 = build_extension(H, {ys[0]});
  const auto E1 = build_extension(H, {ys[1]});
  ElementSampler sample(H, 10, 4);
  for (int t = 0; t < 200; ++t) {
    const auto g = sample();
    const auto h = sample();
    const ExtensionElement x{g, {Int(t), Int(-t)}};
    const ExtensionElement y{h, {Int(3), Int(5)}};
    const auto z = E.multiply(x, y);
    const auto z0 = E0.multiply({g, IntVector{x.t[0]}}, {h, IntVector{y.t[0]}});
    const auto z1 = E1.multiply({g, IntVector{x.t[1]}}, {h, IntVector{y.t[1]}});
    EXPECT_EQ(z.g, z0.g);
    EXPECT_EQ(z.t, (IntVector{z0.t[0], z1.t[0]}));
  }
  EXPECT_TRUE(check_extension(E, 1000, 10, 0).passed());
  EXPECT_THROW(E.multiply(E.identity(), E0.identity()), std::invalid_argument);
}

TEST(Extension, RejectsNonCocycle) {
  const auto P = families::paper_example({2, 4});
  EXPECT_THROW(build_extension(P, {unit_phi(4, 1, 1, 0)}), VerificationFailed);
}

TEST(Witness, ZeroCocycleHasZeroPrimitive) {
  const auto P = families::paper_example({2, 4});
  const auto u = coboundary_witness(P, Cocycle(), 3, 100, 0);
  ASSERT_TRUE(u);
  EXPECT_TRUE(u->terms.empty());
  EXPECT_EQ(u->render(), "0");
}

TEST(Witness, HeisenbergLemmaXIsCoboundary) {
  const auto H = families::heisenberg();
  const Cocycle w = unit_f(2, 0, 1);
  const auto u = coboundary_witness(H, w, 3, 1000, 0);
  ASSERT_TRUE(u);
  ElementSampler sample(H, 20, 9);
  for (int t = 0; t < 500; ++t) {
    const auto g = sample();
    const auto h = sample();
    ASSERT_EQ((*u)(g) + (*u)(h) - (*u)(multiply(H, g, h)), eval(H, w, g, h));
  }
}

TEST(Witness, TorsionMultipleIsCoboundary) {
  for (const auto& P : {families::paper_example({2, 4}), families::paper_example({3, 3, 6})}) {
    for (const auto& x : lemmax_generators(P)) {
      if (x.order == 0) continue;
      const Cocycle w = scale(x.order, x);
      const auto u = coboundary_witness(P, w, 3, 1000, 0);
      ASSERT_TRUE(u) << render(P, w);
      ElementSampler sample(P, 15, 10);
      for (int t = 0; t < 300; ++t) {
        const auto g = sample();
        const auto h = sample();
        ASSERT_EQ((*u)(g) + (*u)(h) - (*u)(multiply(P, g, h)), eval(P, w, g, h));
      }
    }
  }
}

TEST(Witness, NontrivialClassHasNoPrimitive) {
  const auto H = families::heisenberg();
  EXPECT_FALSE(coboundary_witness(H, unit_phi(2, 1, 0, 0), 3, 1000, 0).has_value());
  const auto P = families::paper_example({2, 4});
  const auto xs = lemmax_generators(P);
  EXPECT_FALSE(coboundary_witness(P, xs[0], 3, 1000, 0).has_value());
  EXPECT_THROW(coboundary_witness(P, xs[0], 0, 10, 0), std::invalid_argument);
}
