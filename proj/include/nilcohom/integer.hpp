#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace nilcohom {

/// Arbitrary-precision signed integer used for every exact computation.
using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// C(x, 2) = x(x-1)/2, valid for negative x as the polynomial value.
inline Int binom2(const Int& x) { return x * (x - 1) / 2; }

/// Generalized binomial C(x, k) as an integer-valued polynomial in x.
inline Int binom(const Int& x, unsigned k) {
  Int num = 1;
  Int den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= x - i;
    den *= i + 1;
  }
  return num / den;
}

inline std::size_t choose(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::optional<std::int64_t> to_int64(const Int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  return static_cast<std::int64_t>(x);
}

inline std::string to_string(const Int& x) { return x.str(); }

inline IntVector zeros(std::size_t n) { return IntVector(n, Int(0)); }

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace nilcohom
