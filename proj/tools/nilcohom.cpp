#include "nilcohom/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace nilcohom::cli;
  Invocation inv;
  std::string format = "text";

  CLI::App app{"Cohomology of class-2 nilpotent T-groups with trivial coefficients Z^r"};
  app.add_option("command", inv.command, "validate | h1 | h2 | homology-rank | cocycles | verify | extend | witness | gen | selftest")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("-i,--input", inv.input_path, "presentation JSON (default: standard input)");
  app.add_option("-r,--coeff-rank", inv.coeff_rank, "rank r of the coefficient module Z^r");
  app.add_option("--trials", inv.trials, "random trials for verify/extend/witness")->check(CLI::PositiveNumber);
  app.add_option("--bound", inv.bound, "exponent bound for random elements and random presentations")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", inv.seed, "random seed");
  app.add_option("--max-weight", inv.max_weight, "weighted degree bound of the witness ansatz")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--out", inv.out_path, "write the report to a file");
  app.add_option("--family", inv.family, "gen: paper-example | heisenberg | abelian | random");
  app.add_option("--n", inv.gen_n, "gen: number of divisors (paper-example) or rank n");
  app.add_option("--m", inv.gen_m, "gen: rank m (random)");
  app.add_option("--d", inv.divisors, "gen: divisor chain d1,d2,... (paper-example)")->delimiter(',');
  app.add_option("--cocycle", inv.cocycle_paths, "cocycle JSON file(s) for verify/extend/witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kMalformed;
  }
  inv.format = format == "json" ? Format::json : Format::text;
  if (inv.command == "gen" && inv.family.empty()) {
    std::cerr << "error: gen requires --family\n";
    return kMalformed;
  }
  return run(inv, std::cin, std::cout, std::cerr);
}
