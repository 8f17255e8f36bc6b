#pragma once

#include "nilcohom/cocycles.hpp"
#include "nilcohom/families.hpp"
#include "nilcohom/oracles.hpp"
#include "nilcohom/passi.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace nilcohom::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct NamedPresentation {
  std::string name;
  GroupPresentation P;
};

/// Presentations of the regression, known-value and variant checks.
inline std::vector<NamedPresentation> corpus() {
  std::vector<NamedPresentation> out;
  out.push_back({"paper-example(2,4)", families::paper_example({2, 4})});
  out.push_back({"paper-example(3,3,6)", families::paper_example({3, 3, 6})});
  out.push_back({"paper-example(1,2,4,8)", families::paper_example({1, 2, 4, 8})});
  out.push_back({"heisenberg", families::heisenberg()});
  for (std::size_t n = 1; n <= 6; ++n) out.push_back({"abelian(" + std::to_string(n) + ")", families::abelian(n)});
  for (int d : {2, 3, 6}) out.push_back({"heisenberg(d=" + std::to_string(d) + ")", families::paper_example({d})});
  return out;
}

namespace detail {

inline AbelianGroupInvariants paper_example_expected(const std::vector<Int>& d) {
  const std::size_t k = d.size();
  return AbelianGroupInvariants::from_orders(choose(2 * k, 2) - 1, {d[0]});
}

inline CriterionResult timed(int id, std::string name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
    ok = false;
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return {id, std::move(name), ok, detail.str(), dt.count()};
}

}  // namespace detail

inline CriterionResult divisor_chain_regression() {
  return detail::timed(1, "divisor-chain family regression", [](std::ostringstream& os) {
    bool ok = true;
    for (const std::vector<Int>& d : {std::vector<Int>{2, 4}, {3, 3, 6}, {1, 2, 4, 8}}) {
      const auto start = std::chrono::steady_clock::now();
      const auto rep = h2(families::paper_example(d), 1);
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
      const auto expected = detail::paper_example_expected(d);
      const bool good = rep.total == expected && dt.count() < 1.0;
      os << "n=" << d.size() << ": " << rep.total << (good ? "" : " (expected " + expected.to_string() + ")")
         << " in " << dt.count() << "s; ";
      ok = ok && good;
    }
    return ok;
  });
}

inline CriterionResult dual_path_agreement() {
  auto result = detail::timed(2, "dual-path agreement", [](std::ostringstream& os) {
    std::mt19937_64 rng(2024);
    std::size_t checked = 0;
    for (std::size_t idx = 0; idx < 200; ++idx) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
      const std::size_t max_m = std::min<std::size_t>(3, choose(n, 2));
      const std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_m)(rng);
      const auto P = families::random(n, m, 5, rng());
      for (std::size_t r : {1, 2}) {
        const auto rep = h2(P, r);
        if (rep.total != h2_via_complex(P, r) || !rep.agree) {
          os << "disagreement at presentation " << idx << " r=" << r;
          return false;
        }
        ++checked;
      }
    }
    os << checked << " (presentation, r) pairs agree";
    return true;
  });
  if (result.seconds >= 60.0) {
    result.passed = false;
    result.detail += "; exceeded 60 s budget";
  }
  return result;
}

inline CriterionResult known_values() {
  return detail::timed(3, "known values", [](std::ostringstream& os) {
    bool ok = true;
    auto expect = [&](const std::string& what, const auto& got, const auto& want) {
      if (!(got == want)) {
        os << what << " = " << got << " (expected " << want << "); ";
        ok = false;
      }
    };
    const auto H = families::heisenberg();
    expect("heisenberg H1", h1(H, 1), AbelianGroupInvariants::free(2));
    expect("heisenberg H1 (complex)", h1_via_complex(H, 1), AbelianGroupInvariants::free(2));
    expect("heisenberg H2", h2(H, 1).total, AbelianGroupInvariants::free(2));
    expect("heisenberg H2 (complex)", h2_via_complex(H, 1), AbelianGroupInvariants::free(2));
    expect("heisenberg rank H_2", second_homology_rank(H), std::size_t{2});
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto A = families::abelian(n);
      const auto want = AbelianGroupInvariants::free(choose(n, 2));
      expect("abelian(" + std::to_string(n) + ") H2", h2(A, 1).total, want);
      expect("abelian(" + std::to_string(n) + ") H2 (complex)", h2_via_complex(A, 1), want);
    }
    for (int d : {2, 3, 6}) {
      const auto P = families::paper_example({d});
      const auto want = AbelianGroupInvariants::from_orders(2, {d});
      expect("heisenberg(d=" + std::to_string(d) + ") H2", h2(P, 1).total, want);
      expect("heisenberg(d=" + std::to_string(d) + ") H2 (complex)", h2_via_complex(P, 1), want);
    }
    if (ok) os << "heisenberg, abelian(1..6), heisenberg(d=2,3,6) match";
    return ok;
  });
}

inline CriterionResult cocycle_identity() {
  return detail::timed(4, "cocycle identity", [](std::ostringstream& os) {
    std::size_t count = 0;
    for (const auto& [name, P] : corpus())
      for (const auto& w : all_generators(P)) {
        const auto rep = verify_cocycle(P, w, 1000, 10, 0);
        if (!rep.passed) {
          os << name << ": " << render(P, w) << " fails the " << rep.counterexample->kind;
          return false;
        }
        ++count;
      }
    os << count << " cocycles x 1000 trials, zero failures";
    return true;
  });
}

inline CriterionResult passi_product_rule() {
  return detail::timed(5, "passi product rule", [](std::ostringstream& os) {
    std::size_t pairs_checked = 0;
    for (const auto& [name, P] : corpus()) {
      ElementSampler sample(P, 10, 5);
      for (int t = 0; t < 1000; ++t) {
        const auto g = sample();
        const auto h = sample();
        const auto lhs = p2(P, multiply(P, g, h));
        const auto rhs = p2(P, g) + p2(P, h) + p2_mul(P, p2(P, g), p2(P, h));
        if (!(lhs == rhs)) {
          os << name << ": product rule fails for " << g << ", " << h;
          return false;
        }
        ++pairs_checked;
      }
    }
    os << pairs_checked << " pairs exact";
    return true;
  });
}

inline CriterionResult extension_soundness() {
  return detail::timed(6, "extension soundness", [](std::ostringstream& os) {
    std::size_t count = 0;
    for (const auto& [name, P] : corpus())
      for (const auto& w : all_generators(P)) {
        const auto E = build_extension(P, {w});
        const auto rep = check_extension(E, 1000, 10, 0);
        if (!rep.passed()) {
          os << name << ": extension by " << render(P, w) << " fails"
             << (rep.associative ? "" : " associativity") << (rep.inverses ? "" : " inverses")
             << (rep.identity ? "" : " identity");
          return false;
        }
        ++count;
      }
    os << count << " extensions x 1000 triples";
    return true;
  });
}

inline CriterionResult count_consistency() {
  return detail::timed(7, "count consistency", [](std::ostringstream& os) {
    for (const auto& [name, P] : corpus()) {
      const auto total = h2(P, 1).total;
      const auto xs = lemmax_generators(P);
      std::size_t infinite = 0;
      std::vector<Int> orders;
      for (const auto& x : xs) {
        if (x.order == 0)
          ++infinite;
        else
          orders.push_back(x.order);
      }
      const std::size_t ys = lemmay_basis(P).size();
      if (ys + infinite != total.free_rank() || orders != total.torsion()) {
        os << name << ": generators give free " << ys + infinite << ", H2 = " << total;
        return false;
      }
    }
    os << "all " << corpus().size() << " corpus presentations consistent";
    return true;
  });
}

inline CriterionResult snf_properties() {
  return detail::timed(8, "SNF property suite", [](std::ostringstream& os) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
      const IntMatrix A = oracles::random_matrix(rng, 8, -9, 9);
      const auto snf = smith_normal_form(A);
      if (!(snf.U * A * snf.V == snf.D)) {
        os << "U A V != D for " << A;
        return false;
      }
      if (abs(oracles::determinant(snf.U)) != 1 || abs(oracles::determinant(snf.V)) != 1) {
        os << "non-unimodular transform for " << A;
        return false;
      }
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
          const bool on_diag = i == j && i < snf.rank();
          if (on_diag ? snf.D(i, j) != snf.invariants[i] : snf.D(i, j) != 0) {
            os << "D not in normal form for " << A;
            return false;
          }
        }
      for (std::size_t k = 0; k < snf.rank(); ++k)
        if (snf.invariants[k] < 1 || (k > 0 && snf.invariants[k] % snf.invariants[k - 1] != 0)) {
          os << "divisibility chain broken for " << A;
          return false;
        }
      if (snf.rank() != oracles::fraction_free_rank(A)) {
        os << "rank disagrees with fraction-free elimination for " << A;
        return false;
      }
    }
    os << "500 random matrices";
    return true;
  });
}

inline CriterionResult witness_search() {
  return detail::timed(9, "witness search", [](std::ostringstream& os) {
    const auto P = families::paper_example({2, 4});
    const auto gens = lemmax_generators(P);
    auto it = std::find_if(gens.begin(), gens.end(), [](const CocycleLemmaX& x) { return x.order == 2; });
    if (it == gens.end()) {
      os << "no order-2 generator produced";
      return false;
    }
    const Cocycle doubled = scale(2, *it);
    const auto u = coboundary_witness(P, doubled, 3, 1000, 0);
    if (!u) {
      os << "FINDING: no weight<=3 primitive found for 2*(" << render(P, *it) << ")";
      return false;
    }
    os << "u = " << u->render() << " confirmed on 1000 fresh pairs";
    return true;
  });
}

inline std::vector<CriterionResult> run_all() {
  return {divisor_chain_regression(), dual_path_agreement(), known_values(),
          cocycle_identity(),         passi_product_rule(),  extension_soundness(),
          count_consistency(),        snf_properties(),      witness_search()};
}

/// Prints one line per criterion; returns true iff all pass.
inline bool report(const std::vector<CriterionResult>& results, std::ostream& os) {
  bool all = true;
  for (const auto& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " (" << r.seconds << "s): " << r.detail
       << '\n';
    all = all && r.passed;
  }
  os << (all ? "all acceptance criteria passed" : "acceptance criteria FAILED") << '\n';
  return all;
}

}  // namespace nilcohom::acceptance
