#pragma once

#include <cmath>
#include <complex>

#include "dlf/bernoulli.hpp"
#include "dlf/error.hpp"
#include "dlf/numeric.hpp"

namespace dlf {

namespace detail {

// Stirling series for log Gamma. Reliable for Re w >= 0.5 with |w| >= 12
// (the shift logic below guarantees that region), where the remainder after
// the B_24 term is far below 1e-15 relative.
inline Complex log_gamma_stirling(const Complex& w) {
  constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
  Complex lw = std::log(w);
  Complex res = (w - 0.5) * lw - w + kHalfLog2Pi;
  Complex w2inv = 1.0 / (w * w);
  Complex wpinv = 1.0 / w;  // w^{-(2k-1)}
  for (int k = 1; k <= 12; ++k) {
    res += bernoulli_double(2 * k) / (2.0 * k * (2.0 * k - 1.0)) * wpinv;
    wpinv *= w2inv;
  }
  return res;
}

}  // namespace detail

// Principal branch of log Gamma, continuous on the plane cut along
// (-inf, 0]. Strategy: conjugate into the closed upper half-plane, shift
// right with log Gamma(w) = log Gamma(w+1) - Log(w) (exact for the principal
// branch when Im w >= 0) until the Stirling series applies.
inline Complex log_gamma(Complex s) {
  if (std::isnan(s.real()) || std::isnan(s.imag())) {
    throw DomainError("log_gamma: NaN argument");
  }

  if (s.imag() == 0.0) {
    double x = s.real();
    if (x <= 0.0 && x == std::floor(x)) {
      throw PoleError("log_gamma: pole at non-positive integer");
    }
    if (x > 0.0) {
      double shift = 0.0;
      double xx = x;
      while (xx < 12.0) {
        shift += std::log(xx);
        xx += 1.0;
      }
      return {detail::log_gamma_stirling(Complex(xx, 0.0)).real() - shift,
              0.0};
    }
    // Negative non-integer real axis: reflection. Gamma(x) carries the sign
    // of sin(pi x); the principal log of a negative real has +i pi.
    double fl = std::floor(x);
    double frac = x - fl;  // in (0,1)
    double sin_abs = std::sin(kPi * frac);
    bool negative = (static_cast<long long>(fl) % 2) != 0;
    double lg1 = log_gamma(Complex(1.0 - x, 0.0)).real();
    double re = std::log(kPi / sin_abs) - lg1;
    return {re, negative ? kPi : 0.0};
  }

  bool flip = s.imag() < 0.0;
  Complex w = flip ? std::conj(s) : s;
  Complex shift_sum = 0.0;
  long guard = 0;
  while (w.real() < 0.5 || std::abs(w) < 12.0) {
    shift_sum += std::log(w);
    w += 1.0;
    if (++guard > 2000000) {
      throw AccuracyError("log_gamma: shift recursion failed to terminate");
    }
  }
  Complex res = detail::log_gamma_stirling(w) - shift_sum;
  return flip ? std::conj(res) : res;
}

// Principal-branch log of sin(z), continuous off the real axis, computed in
// exponential form so huge |Im z| never overflows: for Im z > 0 the
// dominant part is e^{-iz}/(2i).
inline Complex log_sin(const Complex& z) {
  if (z.imag() == 0.0) {
    double sz = std::sin(z.real());
    if (sz == 0.0) throw PoleError("log_sin: zero of sin on the real axis");
    return {std::log(std::abs(sz)), sz > 0.0 ? 0.0 : kPi};
  }
  bool flip = z.imag() < 0.0;
  Complex w = flip ? std::conj(z) : z;
  // sin w = (i/2) e^{-iw} (1 - e^{2iw}), |e^{2iw}| < 1 for Im w > 0
  Complex iw{-w.imag(), w.real()};  // i*w
  Complex rest = std::log(1.0 - std::exp(iw + iw));
  Complex res = Complex(-std::log(2.0), kPi / 2.0) - iw + rest;
  return flip ? std::conj(res) : res;
}

}  // namespace dlf
