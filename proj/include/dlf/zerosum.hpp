#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dlf/characters.hpp"
#include "dlf/constants.hpp"
#include "dlf/error.hpp"
#include "dlf/lfunc.hpp"
#include "dlf/numeric.hpp"
#include "dlf/zeros.hpp"

namespace dlf {

// Constants of the asymptotic main term for the sum of L' over zeros up to
// height T, together with the Euler-product sums they are built from.
struct AsymptoticConstants {
  u64 q = 1;
  double a1 = 0.0;
  double a2 = 0.0;
  double euler_log_sum = 0.0;   // sum over p | q of log p / (p-1)
  double euler_log2_sum = 0.0;  // sum over p | q of p log^2 p / (p-1)^2
  double gamma0 = 0.0;
  double gamma1 = 0.0;
};

inline AsymptoticConstants constants(u64 q) {
  if (q < 1) throw DomainError("constants: q must be >= 1");
  const ConstantsTable& tab = ConstantsTable::instance();
  double S = 0.0, P = 0.0;
  for (const PrimePower& pp : factorize(q)) {
    const double p = static_cast<double>(pp.p);
    const double lp = std::log(p);
    S += lp / (p - 1.0);
    P += p * lp * lp / ((p - 1.0) * (p - 1.0));
  }
  const double g0 = tab.gamma0, g1 = tab.gamma1;
  AsymptoticConstants c;
  c.q = q;
  c.euler_log_sum = S;
  c.euler_log2_sum = P;
  c.gamma0 = g0;
  c.gamma1 = g1;
  c.a1 = S + g0 - 1.0;
  c.a2 = 0.5 * S * S + (g0 - 1.0) * S - 1.5 * P + 1.0 - g0 - g0 * g0 - g1;
  return c;
}

// Opt-in description of a hypothetical exceptional (Siegel) zero beta of
// L(s, omega) for a real non-principal omega realized mod q. The pipeline
// never searches for one; absent spec means the a3 term is exactly zero.
struct ExceptionalZeroSpec {
  DirichletCharacter omega;
  double beta = 0.0;

  void validate(u64 q) const {
    if (omega.modulus() != q) {
      throw DomainError("ExceptionalZeroSpec: omega must be realized mod q");
    }
    if (omega.is_principal()) {
      throw DomainError("ExceptionalZeroSpec: omega must be non-principal");
    }
    if (!omega.is_real()) {
      throw DomainError("ExceptionalZeroSpec: omega must be real-valued");
    }
    if (!(beta > 0.0 && beta < 1.0)) {
      throw DomainError("ExceptionalZeroSpec: beta must lie in (0,1)");
    }
    if (beta < 0.5) {
      throw DomainError(
          "ExceptionalZeroSpec: beta < 0.5 rejected as non-exceptional");
    }
  }
};

// a3 = (omega*chi)(-1) tau(conj chi) tau(conj(omega) chi) / (q phi(q))
//      * L'(beta, omega)/beta * (qT/2pi)^beta; zero when no spec is given.
inline Complex a3_term(const std::optional<ExceptionalZeroSpec>& spec,
                       const DirichletCharacter& chi, double T) {
  if (!spec.has_value()) return Complex{0.0, 0.0};
  if (!chi.is_primitive()) {
    throw DomainError("a3_term: chi must be primitive");
  }
  if (!(T > 0.0)) throw DomainError("a3_term: T must be > 0");
  const u64 q = chi.modulus();
  spec->validate(q);
  const DirichletCharacter& omega = spec->omega;
  const double beta = spec->beta;

  const Complex sign = omega.value(-1) * chi.value(-1);
  const Complex tau_chibar = gauss_sum(chi.conjugate());
  const Complex tau_omegabar_chi = gauss_sum(omega.conjugate().times(chi));
  const Complex lp = *l_derivative(omega, Complex{beta, 0.0}).derivative;
  const double phi_q = static_cast<double>(euler_phi(q));
  return sign * tau_chibar * tau_omegabar_chi /
         (static_cast<double>(q) * phi_q) * lp / beta *
         std::pow(static_cast<double>(q) * T / kTwoPi, beta);
}

// M(T) = T/(4pi) log^2(qT/2pi) + a1 (T/2pi) log(qT/2pi) + a2 (T/2pi)
//        + Re a3.
inline double main_term(u64 q, double T, const AsymptoticConstants& c,
                        Complex a3 = Complex{0.0, 0.0}) {
  if (!(T > 0.0)) throw DomainError("main_term: T must be > 0");
  const double x = std::log(static_cast<double>(q) * T / kTwoPi);
  return T / (4.0 * kPi) * x * x + c.a1 * (T / kTwoPi) * x +
         c.a2 * (T / kTwoPi) + a3.real();
}

// Sum of L'(1/2 + i gamma, chi) over a certified zero list, accumulated in
// ascending gamma with compensated summation. Evaluations may run in
// parallel; the reduction order is fixed, so results are deterministic.
inline Complex empirical_sum(const DirichletCharacter& chi,
                             const ZeroList& zeros, int threads = 1) {
  if (!chi.is_primitive()) {
    throw DomainError("empirical_sum: chi must be primitive");
  }
  if (!zeros.certified_count.has_value() ||
      *zeros.certified_count !=
          static_cast<long long>(zeros.zeros.size())) {
    throw CertificateError(
        "empirical_sum: the zero list lacks a completeness certificate");
  }
  const std::size_t n = zeros.zeros.size();
  std::vector<Complex> vals(n);
  std::vector<std::string> errs(n);
  detail::parallel_over(n, threads, [&](std::size_t i) {
    const double g = zeros.zeros[i].gamma;
    try {
      vals[i] = *l_derivative(chi, Complex{0.5, g}).derivative;
    } catch (const Error& e) {
      errs[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < n; ++i) {
    if (!errs[i].empty()) {
      throw AccuracyError("empirical_sum: derivative failed at gamma = " +
                          std::to_string(zeros.zeros[i].gamma) + ": " +
                          errs[i]);
    }
  }
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(vals[i]);
  return acc.value();
}

// One grid row of the zero-sum comparison at a snapped height.
struct ComparisonRow {
  double t_requested = 0.0;
  double t_snapped = 0.0;
  Complex empirical{};
  double main_term = 0.0;
  Complex remainder{};
  double envelope_ratio = 0.0;  // |R| / (sqrt(qT) log^{7/2}(qT))
  double uncond_ratio = 0.0;    // |R| / (T exp(-0.1 sqrt(log T)))
  double imag_fraction = 0.0;   // |Im empirical| / (1 + |main term|)
};

struct ComparisonReport {
  u64 q = 1;
  std::string label;
  std::vector<ComparisonRow> rows;
  std::optional<double> fitted_C;  // least-squares of |R| against the envelope
};

// Full comparison pipeline over a grid of heights: scan and certify the
// zeros once, snap each requested T to a gap midpoint, and compare the
// empirical sum against the main term.
inline ComparisonReport compare(
    const DirichletCharacter& chi, const std::vector<double>& t_grid,
    const ScanConfig& scfg = ScanConfig{}, int threads = 1,
    const std::optional<ExceptionalZeroSpec>& exceptional = std::nullopt) {
  if (!chi.is_primitive()) throw DomainError("compare: chi must be primitive");
  if (t_grid.empty()) throw DomainError("compare: empty T grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw DomainError("compare: T values must be > 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("compare: T grid must be strictly increasing");
    }
  }

  const double t_top = t_grid.back();
  double margin = 3.0;
  ZeroList full{chi, 0.0, {}, std::nullopt};
  for (int attempt = 0;; ++attempt) {
    full = scan_zeros(chi, 0.0, t_top + margin, scfg, threads);
    if (!full.zeros.empty() && full.zeros.back().gamma > t_top) break;
    if (attempt >= 2) {
      throw AccuracyError("compare: no zero found beyond the top grid point");
    }
    margin *= 4.0;
  }

  std::vector<double> t_snap;
  t_snap.reserve(t_grid.size());
  for (double t : t_grid) t_snap.push_back(snap_to_gap_midpoint(full, t));

  // certify once at the largest snapped height; prefixes inherit the
  // certificate because refined sign-change records cannot be spurious
  ZeroList head{chi, t_snap.back(), {}, std::nullopt};
  for (const ZeroRecord& z : full.zeros) {
    if (z.gamma <= t_snap.back()) head.zeros.push_back(z);
  }
  head = verify_completeness(head);

  const AsymptoticConstants c = constants(chi.modulus());
  ComparisonReport report;
  report.q = chi.modulus();
  report.label = chi.label();
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    ZeroList part{chi, t_snap[j], {}, std::nullopt};
    for (const ZeroRecord& z : head.zeros) {
      if (z.gamma <= t_snap[j]) part.zeros.push_back(z);
    }
    part.certified_count = static_cast<long long>(part.zeros.size());

    ComparisonRow row;
    row.t_requested = t_grid[j];
    row.t_snapped = t_snap[j];
    row.empirical = empirical_sum(chi, part, threads);
    const Complex a3 = a3_term(exceptional, chi, t_snap[j]);
    row.main_term = main_term(chi.modulus(), t_snap[j], c, a3);
    row.remainder = row.empirical - row.main_term;
    const double qT = static_cast<double>(chi.modulus()) * t_snap[j];
    const double envelope = std::sqrt(qT) * std::pow(std::log(qT), 3.5);
    row.envelope_ratio = std::abs(row.remainder) / envelope;
    row.uncond_ratio =
        std::abs(row.remainder) /
        (t_snap[j] * std::exp(-0.1 * std::sqrt(std::log(t_snap[j]))));
    row.imag_fraction =
        std::abs(row.empirical.imag()) / (1.0 + std::abs(row.main_term));
    report.rows.push_back(row);
  }

  if (report.rows.size() >= 2) {
    double num = 0.0, den = 0.0;
    for (const ComparisonRow& row : report.rows) {
      const double qT = static_cast<double>(chi.modulus()) * row.t_snapped;
      const double envelope = std::sqrt(qT) * std::pow(std::log(qT), 3.5);
      num += std::abs(row.remainder) * envelope;
      den += envelope * envelope;
    }
    report.fitted_C = num / den;
  }
  return report;
}

}  // namespace dlf
