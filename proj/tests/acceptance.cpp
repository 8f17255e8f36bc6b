// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
#include "nilcohom/acceptance.hpp"

#include <iostream>

int main() {
  const auto results = nilcohom::acceptance::run_all();
  return nilcohom::acceptance::report(results, std::cout) ? 0 : 1;
}
