#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gd {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(const BigInt& n, unsigned k) {
  if (n < k) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - (i - 1);
    r /= i;
  }
  return r;
}

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace gd
