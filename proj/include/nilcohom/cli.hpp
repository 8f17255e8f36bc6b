#pragma once

#include "nilcohom/acceptance.hpp"
#include "nilcohom/families.hpp"
#include "nilcohom/io.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nilcohom::cli {

enum class Format { text, json };

struct Invocation {
  std::string command;
  std::optional<std::string> input_path;
  std::size_t coeff_rank = 1;
  std::size_t trials = 1000;
  std::int64_t bound = 10;
  std::uint64_t seed = 0;
  unsigned max_weight = 3;
  Format format = Format::text;
  std::optional<std::string> out_path;
  // gen
  std::string family;
  std::size_t gen_n = 0;
  std::size_t gen_m = 0;
  std::vector<long long> divisors;
  // verify / extend / witness
  std::vector<std::string> cocycle_paths;
};

enum ExitCode : int { kOk = 0, kFailed = 1, kMalformed = 2 };

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"validate", "h1",      "h2",      "homology-rank", "cocycles",
                                              "verify",   "extend",  "witness", "gen",           "selftest"};
  return names;
}

namespace detail {

using io::Json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_text(const std::optional<std::string>& path, std::istream& in) {
  if (!path) return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(*path);
  if (!f) throw InputError("cannot read file '" + *path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

inline std::string text_of(const AbelianGroupInvariants& g) { return g.to_string(); }

inline std::string element_text(const GroupElement& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

inline std::vector<Cocycle> load_cocycles(const Invocation& inv) {
  std::vector<Cocycle> out;
  for (const auto& path : inv.cocycle_paths) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read file '" + path + "'");
    Json j;
    try {
      j = Json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
      throw io::ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    if (j.is_array()) {
      for (std::size_t k = 0; k < j.size(); ++k) out.push_back(io::cocycle_from_json(j[k], "[" + std::to_string(k) + "]"));
    } else {
      out.push_back(io::cocycle_from_json(j));
    }
  }
  return out;
}

struct Output {
  std::ostringstream text;
  Json json = Json::object();
};

inline int emit(const Invocation& inv, Output& out, std::ostream& os, int code) {
  std::string body = inv.format == Format::json ? out.json.dump(2) + "\n" : out.text.str();
  if (inv.out_path) {
    std::ofstream f(*inv.out_path);
    if (!f) {
      os << "error: cannot write file '" << *inv.out_path << "'\n";
      return kMalformed;
    }
    f << body;
  } else {
    os << body;
  }
  return code;
}

inline GroupPresentation generate(const Invocation& inv) {
  if (inv.family == "paper-example") {
    if (inv.divisors.empty()) throw InputError("gen paper-example: --d is required");
    if (inv.gen_n != 0 && inv.gen_n != inv.divisors.size())
      throw InputError("gen paper-example: --n " + std::to_string(inv.gen_n) + " does not match " +
                       std::to_string(inv.divisors.size()) + " divisors");
    return families::paper_example(std::vector<Int>(inv.divisors.begin(), inv.divisors.end()));
  }
  if (inv.family == "heisenberg") return families::heisenberg();
  if (inv.family == "abelian") return families::abelian(inv.gen_n);
  if (inv.family == "random") return families::random(inv.gen_n, inv.gen_m, inv.bound, inv.seed);
  throw InputError("gen: unknown family '" + inv.family + "' (paper-example, heisenberg, abelian, random)");
}

inline int run_command(const Invocation& inv, std::istream& in, std::ostream& os) {
  Output out;
  const std::string& cmd = inv.command;

  if (cmd == "gen") {
    out.json = io::to_json(generate(inv));
    out.text << out.json.dump(2) << '\n';
    return emit(inv, out, os, kOk);
  }
  if (cmd == "selftest") {
    const auto results = acceptance::run_all();
    bool ok = acceptance::report(results, out.text);
    Json arr = Json::array();
    for (const auto& r : results) {
      Json e;
      e["criterion"] = r.id;
      e["name"] = r.name;
      e["passed"] = r.passed;
      e["detail"] = r.detail;
      arr.push_back(std::move(e));
    }
    out.json["selftest"] = std::move(arr);
    out.json["passed"] = ok;
    return emit(inv, out, os, ok ? kOk : kFailed);
  }

  const GroupPresentation P = io::parse_presentation(read_text(inv.input_path, in));
  out.json["group"] = io::to_json(P);

  const auto report = validate(P);
  if (!report.accepted()) {
    Json fails = Json::array();
    for (const auto& f : report.failures) {
      out.text << "invalid: " << f << '\n';
      fails.push_back(f);
    }
    out.json["valid"] = false;
    out.json["failures"] = std::move(fails);
    return emit(inv, out, os, kFailed);
  }
  out.json["valid"] = true;
  const std::size_t r = inv.coeff_rank;

  if (cmd == "validate") {
    out.text << "valid: n = " << P.n << ", m = " << P.m << ", rank(c) = " << P.m << '\n';
    return emit(inv, out, os, kOk);
  }
  if (cmd == "h1") {
    const auto g = h1(P, r);
    out.text << "H^1 = " << g << '\n';
    out.json["h1"] = io::to_json(g);
    return emit(inv, out, os, kOk);
  }
  if (cmd == "h2") {
    const auto rep = h2(P, r);
    const auto g1 = h1(P, r);
    out.text << "coefficients: Z" << (r == 1 ? "" : "^" + std::to_string(r)) << '\n'
             << "H^1 = " << g1 << '\n'
             << "H^2 = " << rep.total << '\n'
             << "  Coker c* = " << rep.coker_cstar << '\n'
             << "  rank Hom(L1 (x) L2 / S, M) = " << rep.hom_part_rank << '\n'
             << "  rank Ker c = " << rep.ker_c_rank << '\n'
             << "  Ext(Coker c, M) = " << rep.ext_part << '\n'
             << "  complex cross-check = " << rep.crosscheck << (rep.agree ? " (agree)" : " (DISAGREE)") << '\n';
    out.json["h1"] = io::to_json(g1);
    out.json["h2"] = io::to_json(rep);
    return emit(inv, out, os, rep.agree ? kOk : kFailed);
  }
  if (cmd == "homology-rank") {
    const auto k = second_homology_rank(P);
    out.text << "rank H_2 = " << k << '\n';
    out.json["homology_rank"] = k;
    return emit(inv, out, os, kOk);
  }

  const std::vector<Cocycle> given = load_cocycles(inv);
  const bool defaults = given.empty();
  const std::vector<Cocycle> cocycles = defaults ? all_generators(P) : given;
  Json arr = Json::array();

  if (cmd == "cocycles") {
    for (const auto& w : cocycles) {
      Json e = io::to_json(w);
      e["polynomial"] = render(P, w);
      arr.push_back(std::move(e));
      const auto* x = std::get_if<CocycleLemmaX>(&w.value);
      out.text << (x ? "lemmax" : "lemmay");
      if (x) out.text << (x->order == 0 ? " (infinite order)" : " (order " + x->order.str() + ")");
      out.text << ": " << render(P, w) << '\n';
    }
    if (cocycles.empty()) out.text << "no cocycles: H^2 = 0\n";
    out.json["cocycles"] = std::move(arr);
    return emit(inv, out, os, kOk);
  }
  if (cmd == "verify") {
    bool all = true;
    for (const auto& w : cocycles) {
      const auto rep = verify_cocycle(P, w, inv.trials, inv.bound, inv.seed);
      Json e;
      e["polynomial"] = render(P, w);
      e["passed"] = rep.passed;
      e["trials"] = rep.trials_run;
      out.text << (rep.passed ? "pass" : "FAIL") << " (" << rep.trials_run << " trials): " << render(P, w) << '\n';
      if (rep.counterexample) {
        const auto& c = *rep.counterexample;
        Json ce;
        ce["kind"] = c.kind;
        ce["g"] = io::to_json(c.g);
        ce["h"] = io::to_json(c.h);
        ce["k"] = io::to_json(c.k);
        ce["lhs"] = io::to_json(c.lhs);
        ce["rhs"] = io::to_json(c.rhs);
        e["counterexample"] = std::move(ce);
        out.text << "  " << c.kind << " violated at g=" << element_text(c.g) << " h=" << element_text(c.h)
                 << " k=" << element_text(c.k) << ": " << c.lhs << " != " << c.rhs << '\n';
      }
      all = all && rep.passed;
      arr.push_back(std::move(e));
    }
    out.json["verify"] = std::move(arr);
    out.json["passed"] = all;
    return emit(inv, out, os, all ? kOk : kFailed);
  }
  if (cmd == "extend") {
    const auto E = build_extension(P, cocycles);
    const auto rep = check_extension(E, inv.trials, inv.bound, inv.seed);
    out.text << "central extension by Z" << (E.fiber_rank() == 1 ? "" : "^" + std::to_string(E.fiber_rank()))
             << " with " << E.fiber_rank() << " fiber cocycle(s)\n"
             << "associativity: " << (rep.associative ? "pass" : "FAIL") << '\n'
             << "inverses: " << (rep.inverses ? "pass" : "FAIL") << '\n'
             << "identity: " << (rep.identity ? "pass" : "FAIL") << '\n'
             << "trials: " << rep.trials_run << '\n';
    Json e;
    e["fiber_rank"] = E.fiber_rank();
    e["associative"] = rep.associative;
    e["inverses"] = rep.inverses;
    e["identity"] = rep.identity;
    e["trials"] = rep.trials_run;
    out.json["extend"] = std::move(e);
    return emit(inv, out, os, rep.passed() ? kOk : kFailed);
  }
  if (cmd == "witness") {
    // Without explicit cocycles, search primitives for d * (each order-d generator).
    std::vector<Cocycle> targets;
    if (defaults) {
      for (const auto& x : lemmax_generators(P))
        if (x.order != 0) targets.push_back(scale(x.order, x));
    } else {
      targets = given;
    }
    bool all = true;
    for (const auto& w : targets) {
      const auto u = coboundary_witness(P, w, inv.max_weight, inv.trials, inv.seed);
      Json e;
      e["cocycle"] = render(P, w);
      if (u) {
        e["witness"] = u->render();
        out.text << "w = " << render(P, w) << "\n  u = " << u->render() << " (confirmed on " << inv.trials
                 << " pairs)\n";
      } else {
        e["witness"] = nullptr;
        out.text << "w = " << render(P, w) << "\n  no primitive of weight <= " << inv.max_weight
                 << " found (not a proof of nontriviality)\n";
      }
      all = all && u.has_value();
      arr.push_back(std::move(e));
    }
    if (targets.empty()) out.text << "no torsion classes\n";
    out.json["witness"] = std::move(arr);
    return emit(inv, out, os, all ? kOk : kFailed);
  }
  throw InputError("unknown command '" + cmd + "'");
}

}  // namespace detail

/// Executes one command. Exit codes: 0 success, 1 validation or verification
/// failure, 2 malformed input.
inline int run(const Invocation& inv, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    return detail::run_command(inv, in, out);
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const detail::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const VerificationFailed& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const InvalidPresentation& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
}

}  // namespace nilcohom::cli
