#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

#include "dlf/error.hpp"

namespace dlf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Bernoulli numbers B_0..B_n_max as exact rationals in the B_1 = -1/2
// convention, from the recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1.
// The arbitrary-precision rational backend makes the arithmetic exact at any
// desk-scale n_max (B_60 has a 43-digit numerator, far beyond fixed-width
// integers).
inline std::vector<Rational> bernoulli_numbers(int n_max) {
  if (n_max < 0) throw DomainError("bernoulli_numbers: n_max must be >= 0");
  std::vector<Rational> b;
  b.reserve(static_cast<std::size_t>(n_max) + 1);
  b.emplace_back(1);
  for (int n = 1; n <= n_max; ++n) {
    Rational acc = 0;
    BigInt binom = 1;  // C(n+1, 0), updated incrementally
    for (int k = 0; k < n; ++k) {
      acc += Rational(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (n + 1 - k) / (k + 1);  // exact: -> C(n+1, k+1)
    }
    // The k = n coefficient is C(n+1, n) = n + 1.
    b.push_back(-acc / (n + 1));
  }
  return b;
}

// B_n as a double, from a cached exact table. n <= 64 covers every internal
// consumer (Euler-Maclaurin corrections and the Stirling series).
inline double bernoulli_double(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t;
    for (const Rational& r : bernoulli_numbers(64)) {
      t.push_back(static_cast<double>(r));
    }
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size())) {
    throw DomainError("bernoulli_double: n outside cached range [0, 64]");
  }
  return table[static_cast<std::size_t>(n)];
}

}  // namespace dlf
