#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "dlf/characters.hpp"
#include "dlf/error.hpp"
#include "dlf/gamma.hpp"
#include "dlf/hurwitz.hpp"
#include "dlf/numeric.hpp"

namespace dlf {

enum class EvalMethod { hurwitz, afe, euler_product_tail };

// One L-function evaluation with a propagated absolute error bound. For
// l_derivative the bound covers the derivative entry (the value's own bound
// is never larger in this engine).
struct LEvaluation {
  Complex s{};
  Complex value{};
  std::optional<Complex> derivative{};
  EvalMethod method = EvalMethod::hurwitz;
  double abs_error_bound = 0.0;
};

// The functional-equation factor Delta(s, chi) with its root number
//   Delta(s, chi) = eps(chi) 2^s pi^{s-1} q^{1/2-s} Gamma(1-s)
//                   sin(pi (s + kappa) / 2),
//   eps(chi) = tau(chi) / (i^kappa sqrt(q)),
// so that L(s, chi) = Delta(s, chi) L(1-s, conj chi) for primitive chi.
struct DeltaFactor {
  Complex s{};
  Complex value{};
  Complex epsilon_chi{};
  int kappa = 0;
};

namespace detail {

inline EulerMaclaurinConfig default_l_config(const Complex& s,
                                             double target = 1e-12) {
  return EulerMaclaurinConfig::for_height(std::abs(s.imag()), target,
                                          std::min(s.real(), 0.0));
}

// L and L' for non-principal chi through the Hurwitz decomposition
//   L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q),
//   L'(s, chi) = -log q * L(s, chi) + q^{-s} sum_a chi(a) zeta_s'(s, a/q).
inline HurwitzResult l_core_direct(const DirichletCharacter& chi,
                                   const Complex& s,
                                   const EulerMaclaurinConfig& cfg,
                                   bool want_ds) {
  const u64 q = chi.modulus();
  const double qd = static_cast<double>(q);
  const double lq = std::log(qd);
  const Complex qs = pow_real_base(qd, -s);
  const double qmag = std::abs(qs);

  CompensatedComplexSum sum, dsum;
  double errv = 0.0, errd = 0.0;
  for (u64 a = 1; a <= q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    Complex cv = chi.value(static_cast<long long>(a));
    auto h = hurwitz_core(s, static_cast<double>(a) / qd, cfg, want_ds);
    sum.add(cv * h.value);
    errv += h.err_value;
    if (want_ds) {
      dsum.add(cv * h.ds);
      errd += h.err_ds;
    }
  }

  HurwitzResult r;
  r.value = qs * sum.value();
  r.err_value = qmag * errv + 1e-15 * std::abs(r.value);
  if (want_ds) {
    r.ds = -lq * r.value + qs * dsum.value();
    r.err_ds = lq * r.err_value + qmag * errd + 1e-15 * std::abs(r.ds);
  }
  return r;
}

// Evaluation of an entire L (non-principal chi) at s within 1e-6 of the
// removable-looking point s = 1, where the per-term Hurwitz poles cancel:
// replace the value by its mean over a small circle centered at s (exact for
// an analytic function, aliasing error far below roundoff), keeping every
// node a safe distance from the pole of the individual zeta(s, a/q) terms.
inline HurwitzResult l_core_circle(const DirichletCharacter& chi,
                                   const Complex& s,
                                   const EulerMaclaurinConfig& cfg,
                                   bool want_ds) {
  constexpr int kNodes = 16;
  constexpr double kRadius = 1e-2;
  CompensatedComplexSum sv, sd;
  double ev = 0.0, ed = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    Complex node = s + kRadius * unit_root(j, kNodes);
    auto h = l_core_direct(chi, node, cfg, want_ds);
    sv.add(h.value);
    ev = std::max(ev, h.err_value);
    if (want_ds) {
      sd.add(h.ds);
      ed = std::max(ed, h.err_ds);
    }
  }
  HurwitzResult r;
  r.value = sv.value() / static_cast<double>(kNodes);
  r.err_value = ev + 1e-15 * std::abs(r.value);
  if (want_ds) {
    r.ds = sd.value() / static_cast<double>(kNodes);
    r.err_ds = ed + 1e-15 * std::abs(r.ds);
  }
  return r;
}

inline HurwitzResult l_core(const DirichletCharacter& chi, const Complex& s,
                            const EulerMaclaurinConfig& cfg, bool want_ds) {
  if (chi.is_principal()) {
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-13) {
      throw PoleError("l_value: pole at s = 1 for the principal character");
    }
    // L(s, chi0 mod q) = zeta(s) * prod_{p | q} (1 - p^{-s}); the derivative
    // adds the factor sum_{p | q} log p / (p^s - 1) on the product side.
    auto z = hurwitz_core(s, 1.0, cfg, want_ds);
    Complex prod{1.0, 0.0};
    Complex dlog{0.0, 0.0};
    for (const auto& f : chi.group().factorization()) {
      double p = static_cast<double>(f.p);
      Complex ps = pow_real_base(p, s);
      prod *= 1.0 - 1.0 / ps;
      dlog += std::log(p) / (ps - 1.0);
    }
    HurwitzResult r;
    r.value = z.value * prod;
    r.err_value = z.err_value * std::abs(prod) + 1e-15 * std::abs(r.value);
    if (want_ds) {
      r.ds = prod * (z.ds + z.value * dlog);
      r.err_ds = std::abs(prod) * (z.err_ds + z.err_value * std::abs(dlog)) +
                 1e-15 * std::abs(r.ds);
    }
    return r;
  }
  if (std::abs(s - Complex(1.0, 0.0)) <= 1e-6) {
    return l_core_circle(chi, s, cfg, want_ds);
  }
  return l_core_direct(chi, s, cfg, want_ds);
}

}  // namespace detail

inline LEvaluation l_value(const DirichletCharacter& chi, const Complex& s,
                           const EulerMaclaurinConfig& cfg) {
  auto r = detail::l_core(chi, s, cfg, false);
  return LEvaluation{s, r.value, std::nullopt,
                     chi.is_principal() ? EvalMethod::euler_product_tail
                                        : EvalMethod::hurwitz,
                     r.err_value};
}

inline LEvaluation l_value(const DirichletCharacter& chi, const Complex& s) {
  return l_value(chi, s, detail::default_l_config(s));
}

inline LEvaluation l_derivative(const DirichletCharacter& chi,
                                const Complex& s,
                                const EulerMaclaurinConfig& cfg) {
  auto r = detail::l_core(chi, s, cfg, true);
  return LEvaluation{s, r.value, r.ds,
                     chi.is_principal() ? EvalMethod::euler_product_tail
                                        : EvalMethod::hurwitz,
                     r.err_ds};
}

inline LEvaluation l_derivative(const DirichletCharacter& chi,
                                const Complex& s) {
  return l_derivative(chi, s, detail::default_l_config(s));
}

// L'/L with a guard against evaluation too close to a zero of L: refuses
// (rather than returning a huge, uncertifiable quotient) when |L| falls
// below the floor or below twice its own propagated error bound.
inline Complex l_log_derivative(const DirichletCharacter& chi,
                                const Complex& s,
                                const EulerMaclaurinConfig& cfg,
                                double floor = 1e-12) {
  auto r = detail::l_core(chi, s, cfg, true);
  double mag = std::abs(r.value);
  if (mag < floor || mag < 2.0 * r.err_value) {
    throw AccuracyError(
        "l_log_derivative: |L(s,chi)| = " + std::to_string(mag) +
        " is below the certification floor " + std::to_string(floor) +
        " (evaluation too close to a zero)");
  }
  return r.ds / r.value;
}

inline Complex l_log_derivative(const DirichletCharacter& chi,
                                const Complex& s, double floor = 1e-12) {
  return l_log_derivative(chi, s, detail::default_l_config(s), floor);
}

// Root number eps(chi) = tau(chi) / (i^kappa sqrt(q)); unimodular for
// primitive chi (|tau| = sqrt(q)).
inline Complex root_number(const DirichletCharacter& chi) {
  double q = static_cast<double>(chi.modulus());
  return gauss_sum(chi) / (unit_root(chi.parity_kappa(), 4) * std::sqrt(q));
}

inline DeltaFactor delta_factor(const Complex& s,
                                const DirichletCharacter& chi) {
  if (!chi.is_primitive()) {
    throw DomainError(
        "delta_factor: the functional equation requires a primitive "
        "character; pass chi.primitive_inducing() explicitly");
  }
  // Gamma(1-s) poles at integer s >= 1 may or may not be cancelled by the
  // sine factor; both situations are refused rather than regularized.
  double rn = std::round(s.real());
  if (rn >= 1.0 && std::abs(s - Complex(rn, 0.0)) < 1e-6) {
    throw PoleError(
        "delta_factor: s within 1e-6 of a positive integer (pole of "
        "Gamma(1-s))");
  }
  const double q = static_cast<double>(chi.modulus());
  const int kappa = chi.parity_kappa();
  const Complex eps = root_number(chi);
  if (std::abs(std::abs(eps) - 1.0) > 1e-10) {
    throw AccuracyError("delta_factor: |eps(chi)| deviates from 1");
  }
  Complex log_delta = Complex(0.0, std::arg(eps)) + s * std::log(2.0) +
                      (s - 1.0) * std::log(kPi) +
                      (Complex(0.5, 0.0) - s) * std::log(q) +
                      log_gamma(1.0 - s) +
                      log_sin(0.5 * kPi * (s + static_cast<double>(kappa)));
  return DeltaFactor{s, std::exp(log_delta), eps, kappa};
}

namespace detail {

// Unimodular rotation e^{i Im w} with
//   w = -1/2 Log eps(chi) + (s+kappa)/2 log(q/pi) + log Gamma((s+kappa)/2)
// at s = 1/2 + it. The positive scale e^{Re w} is dropped: it preserves
// realness and sign changes while avoiding the Gamma-magnitude underflow
// (e^{-pi t / 4}) at heights beyond ~900.
inline Complex rotated_value(const DirichletCharacter& chi, double t) {
  if (!chi.is_primitive()) {
    throw DomainError("rotated_Z: chi must be primitive");
  }
  const double q = static_cast<double>(chi.modulus());
  const double kappa = static_cast<double>(chi.parity_kappa());
  const Complex s{0.5, t};
  const Complex eps = root_number(chi);
  Complex w = Complex(0.0, -0.5 * std::arg(eps)) +
              0.5 * (s + kappa) * std::log(q / kPi) +
              log_gamma(0.5 * (s + kappa));
  Complex rot{std::cos(w.imag()), std::sin(w.imag())};
  auto L = l_core(chi, s, default_l_config(s), false);
  return rot * L.value;
}

}  // namespace detail

// Real rotated function on the critical line: Z(t) = Re[e^{i theta(t)}
// L(1/2+it, chi)] with theta chosen from the completed-function phase so
// that the rotated quantity is real; critical-line zeros of L are exactly
// the sign changes of Z.
inline double rotated_Z(const DirichletCharacter& chi, double t) {
  Complex z = detail::rotated_value(chi, t);
  if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z.real()))) {
    throw AccuracyError(
        "rotated_Z: imaginary residue exceeds tolerance (eps branch or "
        "accuracy bug)");
  }
  return z.real();
}

// Lavrik approximate functional equation (cross-check path only):
//   L(s, chi) ~ sum_{n <= x} chi(n) n^{-s}
//              + Delta(s, chi) sum_{n <= y} conj(chi)(n) n^{s-1},
// valid for 0 <= sigma <= 1 with 2 pi x y = t. The reported bound is the
// envelope sqrt(q) (y^{-sigma} + x^{sigma-1} (qt)^{1/2-sigma}) log 2t with
// constant 1 -- an envelope, not a certified bound.
inline LEvaluation afe_value(const DirichletCharacter& chi, const Complex& s,
                             double x, double y) {
  const double sigma = s.real();
  const double t = s.imag();
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw DomainError("afe_value: sigma must lie in [0, 1]");
  }
  if (!(t > 0.0)) throw DomainError("afe_value: t must be positive");
  if (!(x >= 1.0) || !(y >= 1.0)) {
    throw DomainError("afe_value: x and y must be >= 1");
  }
  if (std::abs(kTwoPi * x * y - t) > 1e-9 * t) {
    throw DomainError("afe_value: the constraint 2 pi x y = t is violated");
  }
  auto d = delta_factor(s, chi);
  auto chib = chi.conjugate();
  CompensatedComplexSum s1, s2;
  for (long long n = 1; n <= static_cast<long long>(std::floor(x)); ++n) {
    s1.add(chi.value(n) * pow_real_base(static_cast<double>(n), -s));
  }
  for (long long n = 1; n <= static_cast<long long>(std::floor(y)); ++n) {
    s2.add(chib.value(n) * pow_real_base(static_cast<double>(n), s - 1.0));
  }
  const double q = static_cast<double>(chi.modulus());
  double envelope = std::sqrt(q) *
                    (std::pow(y, -sigma) +
                     std::pow(x, sigma - 1.0) * std::pow(q * t, 0.5 - sigma)) *
                    std::log(2.0 * t);
  return LEvaluation{s, s1.value() + d.value * s2.value(), std::nullopt,
                     EvalMethod::afe, envelope};
}

// Numerically fitted Laurent data of the principal-character L at s = 1,
// used as a cross-check harness against the closed forms assembled from the
// Stieltjes/eta constants and the prime sums over p | q.
struct PrincipalLaurent {
  // L'(s, chi0): coefficients of (s-1)^{-2}, (s-1)^{-1}, (s-1)^{0}
  double lprime_m2 = 0.0;
  double lprime_m1 = 0.0;
  double lprime_0 = 0.0;
  // (L'/L)(s, chi0): coefficients of (s-1)^{-1}, (s-1)^{0}, (s-1)^{1}
  double llog_m1 = 0.0;
  double llog_0 = 0.0;
  double llog_1 = 0.0;

  std::array<double, 6> as_array() const {
    return {lprime_m2, lprime_m1, lprime_0, llog_m1, llog_0, llog_1};
  }
};

namespace detail {

// Laurent coefficients of orders m_lo..m_hi from samples on the circle
// |s-1| = r: c_m = (1/K) r^{-m} sum_j f_j omega^{-jm}, exact up to aliasing
// O(r^{K-|m|}) for a function whose pole order at 1 is <= -m_lo.
template <std::size_t K>
inline std::array<Complex, 5> laurent_dft(const std::array<Complex, K>& f,
                                          int m_lo, int m_hi, double r) {
  std::array<Complex, 5> out{};
  for (int m = m_lo; m <= m_hi; ++m) {
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < K; ++j) {
      acc.add(f[j] * unit_root(-static_cast<long long>(j) * m,
                               static_cast<long long>(K)));
    }
    out[static_cast<std::size_t>(m - m_lo)] =
        acc.value() / static_cast<double>(K) * std::pow(r, -m);
  }
  return out;
}

}  // namespace detail

inline PrincipalLaurent laurent_check_principal(u64 q) {
  if (q < 1) throw DomainError("laurent_check_principal: q must be >= 1");
  auto chi = DirichletCharacter::principal(q);
  constexpr int kNodes = 32;

  auto fit = [&chi](double r) {
    std::array<Complex, kNodes> lp{}, ll{};
    for (int j = 0; j < kNodes; ++j) {
      Complex node = Complex(1.0, 0.0) + r * unit_root(j, kNodes);
      auto core = detail::l_core(chi, node, detail::default_l_config(node),
                                 true);
      lp[static_cast<std::size_t>(j)] = core.ds;
      ll[static_cast<std::size_t>(j)] = core.ds / core.value;
    }
    auto clp = detail::laurent_dft<kNodes>(lp, -2, 0, r);
    auto cll = detail::laurent_dft<kNodes>(ll, -1, 1, r);
    return std::array<Complex, 6>{clp[0], clp[1], clp[2],
                                  cll[0], cll[1], cll[2]};
  };

  auto c1 = fit(1e-2);
  auto c2 = fit(2e-2);
  for (std::size_t i = 0; i < 6; ++i) {
    double scale = 1.0 + std::abs(c1[i]);
    if (std::abs(c1[i] - c2[i]) > 1e-7 * scale ||
        std::abs(c1[i].imag()) > 1e-7 * scale) {
      throw AccuracyError(
          "laurent_check_principal: ill-conditioned fit (two-radius "
          "disagreement or imaginary leakage)");
    }
  }
  PrincipalLaurent out;
  out.lprime_m2 = c1[0].real();
  out.lprime_m1 = c1[1].real();
  out.lprime_0 = c1[2].real();
  out.llog_m1 = c1[3].real();
  out.llog_0 = c1[4].real();
  out.llog_1 = c1[5].real();
  return out;
}

}  // namespace dlf
