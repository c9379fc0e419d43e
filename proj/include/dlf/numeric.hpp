#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace dlf {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Compensated (Neumaier) accumulator. Keeps a running correction term so that
// long sums of mixed-magnitude terms lose almost no precision and the result
// is independent of reasonable summation orders.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Component-wise compensated accumulator for complex terms.
class CompensatedComplexSum {
 public:
  void add(const Complex& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// x^s for real x > 0 and complex s, via the polar form. Cheaper and slightly
// more accurate than std::pow on complex arguments because the base is real.
inline Complex pow_real_base(double x, const Complex& s) {
  double lx = std::log(x);
  double mag = std::exp(s.real() * lx);
  double ph = s.imag() * lx;
  return {mag * std::cos(ph), mag * std::sin(ph)};
}

// exp(2*pi*i * k / n) for integer k, n — root of unity from an exact
// exponent. The angle is reduced exactly in integer arithmetic first.
inline Complex unit_root(long long k, long long n) {
  long long r = k % n;
  if (r < 0) r += n;
  // Crisp values on the axes so that e.g. characters mod 4 give exactly ±i.
  if (4 * r == 0) return {1.0, 0.0};
  if (4 * r == n) return {0.0, 1.0};
  if (2 * r == n) return {-1.0, 0.0};
  if (4 * r == 3 * n) return {0.0, -1.0};
  double ang = kTwoPi * (static_cast<double>(r) / static_cast<double>(n));
  return {std::cos(ang), std::sin(ang)};
}

// Principal-value wrap of an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  if (a > kPi) a -= kTwoPi;
  return a;
}

}  // namespace dlf
