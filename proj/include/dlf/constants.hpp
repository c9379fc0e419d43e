#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "dlf/bernoulli.hpp"
#include "dlf/error.hpp"
#include "dlf/hurwitz.hpp"
#include "dlf/numeric.hpp"

namespace dlf {

namespace detail {

// m-th derivative of f(x) = log^k(x)/x for k in {0,1}:
//   k=0: f^(m)(x) = (-1)^m m! / x^{m+1}
//   k=1: f^(m)(x) = (-1)^m m! (log x - H_m) / x^{m+1}
inline double log_over_x_derivative(int k, int m, double x) {
  double mfact = factorial_double(m);
  double h = 0.0;
  for (int j = 1; j <= m; ++j) h += 1.0 / j;
  double base = (k == 0) ? 1.0 : (std::log(x) - h);
  double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * mfact * base / std::pow(x, m + 1);
}

}  // namespace detail

// Raw defining limit gamma_k ~ sum_{m<=n} log^k m / m - log^{k+1} n / (k+1),
// used as the independent cross-check of the accelerated method.
inline double stieltjes_gamma_raw(int k, long n) {
  if (k != 0 && k != 1) throw DomainError("stieltjes_gamma_raw: k in {0,1}");
  CompensatedSum sum;
  for (long m = 1; m <= n; ++m) {
    double lm = std::log(static_cast<double>(m));
    sum.add((k == 0 ? 1.0 : lm) / static_cast<double>(m));
  }
  double ln = std::log(static_cast<double>(n));
  double integral = (k == 0) ? ln : ln * ln / 2.0;
  return sum.value() - integral;
}

// Accelerated evaluation of the same limit: truncate at n0 and append the
// Euler-Maclaurin corrections for the tail,
//   gamma_k = sum_{m<=n0} f(m) - int_1^{n0} f - f(n0)/2
//           - sum_{j=1}^{J} B_{2j}/(2j)! f^{(2j-1)}(n0),
// with f(x) = log^k(x)/x. Converged far below 1e-12 at n0=60, J=12.
inline double stieltjes_gamma_accelerated(int k) {
  if (k != 0 && k != 1)
    throw DomainError("stieltjes_gamma_accelerated: k in {0,1}");
  const int n0 = 60;
  const int J = 12;
  CompensatedSum sum;
  for (int m = 1; m <= n0; ++m) {
    double lm = std::log(static_cast<double>(m));
    sum.add((k == 0 ? 1.0 : lm) / m);
  }
  double x = n0;
  double lx = std::log(x);
  double result = sum.value();
  result -= (k == 0) ? lx : lx * lx / 2.0;
  result -= 0.5 * ((k == 0 ? 1.0 : lx) / x);
  for (int j = 1; j <= J; ++j) {
    result -= bernoulli_double(2 * j) / detail::factorial_double(2 * j) *
              detail::log_over_x_derivative(k, 2 * j - 1, x);
  }
  return result;
}

// gamma_k computed once (accelerated) and certified against the raw limit.
inline double stieltjes_gamma(int k);

// Audit table of the scalar constants the asymptotic formulas consume.
// Values are computed at first use, never hardcoded; construction fails
// loudly if the two-method Stieltjes cross-check disagrees.
struct ConstantsTable {
  double gamma0;
  double gamma1;
  std::array<double, 2> eta;  // eta_0, eta_1
  std::vector<Rational> bernoulli;  // B_0..B_60

  static const ConstantsTable& instance() {
    static const ConstantsTable table = [] {
      ConstantsTable t;
      t.gamma0 = stieltjes_gamma_accelerated(0);
      t.gamma1 = stieltjes_gamma_accelerated(1);
      const long n_check = 1000000;
      if (std::abs(t.gamma0 - stieltjes_gamma_raw(0, n_check)) > 1e-5 ||
          std::abs(t.gamma1 - stieltjes_gamma_raw(1, n_check)) > 1e-5) {
        throw AccuracyError(
            "ConstantsTable: accelerated and raw-limit Stieltjes values "
            "disagree beyond 1e-5");
      }
      // Laurent coefficients of zeta'/zeta(s) + 1/(s-1) at s=1:
      // eta_0 = gamma_0 and eta_1 = -gamma_0^2 - 2 gamma_1 (the sign fixed
      // by the numeric Laurent-fit oracle in the test suite).
      t.eta = {t.gamma0, -t.gamma0 * t.gamma0 - 2.0 * t.gamma1};
      t.bernoulli = bernoulli_numbers(60);
      return t;
    }();
    return table;
  }
};

inline double stieltjes_gamma(int k) {
  const auto& t = ConstantsTable::instance();
  if (k == 0) return t.gamma0;
  if (k == 1) return t.gamma1;
  throw DomainError("stieltjes_gamma: k in {0,1}");
}

// eta_0..eta_{k_max} as a list, per the table above.
inline std::vector<double> eta_constants(int k_max) {
  if (k_max != 0 && k_max != 1) throw DomainError("eta_constants: k_max in {0,1}");
  const auto& t = ConstantsTable::instance();
  std::vector<double> out{t.eta[0]};
  if (k_max >= 1) out.push_back(t.eta[1]);
  return out;
}

}  // namespace dlf
