// Acceptance gate: one line per criterion, [PASS]/[FAIL] with the measured
// quantities and elapsed time. Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dlf/characters.hpp"
#include "dlf/constants.hpp"
#include "dlf/error.hpp"
#include "dlf/lfunc.hpp"
#include "dlf/numeric.hpp"
#include "dlf/zeros.hpp"
#include "dlf/zerosum.hpp"

namespace {

using dlf::Complex;
using dlf::u64;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, bool ok, const std::string& what, double elapsed,
            double limit) {
  bool pass = ok && elapsed < limit;
  std::printf("[%s] %d. %s (%.2f s, limit %.0f s)\n", pass ? "PASS" : "FAIL",
              idx, what.c_str(), elapsed, limit);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

dlf::DirichletCharacter first_primitive(u64 q) {
  for (const auto& chi : dlf::enumerate_characters(q)) {
    if (chi.is_primitive()) return chi;
  }
  throw dlf::DomainError("no primitive character mod " + std::to_string(q));
}

// 1. character algebra: orthogonality and |tau| = sqrt(q)
void criterion1() {
  auto t0 = Clock::now();
  double max_orth = 0.0, max_tau = 0.0;
  try {
    for (u64 q = 1; q <= 50; ++q) {
      auto chars = dlf::enumerate_characters(q);
      const double phi = static_cast<double>(chars.size());
      for (std::size_t i = 0; i < chars.size(); ++i) {
        for (std::size_t j = 0; j < chars.size(); ++j) {
          Complex acc{0.0, 0.0};
          for (u64 n = 0; n < q; ++n) {
            acc += chars[i].value(static_cast<long long>(n)) *
                   std::conj(chars[j].value(static_cast<long long>(n)));
          }
          double expect = (i == j) ? phi : 0.0;
          max_orth = std::max(max_orth, std::abs(acc - expect));
        }
      }
      // column relation on a pair of units, every q with more than one unit
      std::vector<u64> units;
      for (u64 n = 1; n < std::max<u64>(q, 2) && units.size() < 2; ++n) {
        if (std::gcd(n, q) == 1) units.push_back(n);
      }
      if (units.size() == 2) {
        Complex same{0.0, 0.0}, diff{0.0, 0.0};
        for (const auto& chi : chars) {
          same += chi.value(static_cast<long long>(units[0])) *
                  std::conj(chi.value(static_cast<long long>(units[0])));
          diff += chi.value(static_cast<long long>(units[0])) *
                  std::conj(chi.value(static_cast<long long>(units[1])));
        }
        max_orth = std::max(max_orth, std::abs(same - phi));
        max_orth = std::max(max_orth, std::abs(diff));
      }
      for (const auto& chi : chars) {
        if (!chi.is_primitive()) continue;
        double tau = std::abs(dlf::gauss_sum(chi));
        max_tau = std::max(max_tau,
                           std::abs(tau - std::sqrt(static_cast<double>(q))));
      }
    }
    bool ok = max_orth <= 1e-10 && max_tau <= 1e-10;
    report(1, ok,
           "character algebra q<=50: orthogonality residual " + fmt(max_orth) +
               ", |tau|-sqrt(q) residual " + fmt(max_tau) + " (tol 1e-10)",
           seconds_since(t0), 5.0);
  } catch (const std::exception& e) {
    report(1, false, std::string("character algebra: exception: ") + e.what(),
           seconds_since(t0), 5.0);
  }
}

// 2. functional equation residual at 200 random points
void criterion2() {
  auto t0 = Clock::now();
  try {
    std::mt19937_64 rng(20240816u);
    std::uniform_int_distribution<u64> qdist(1, 20);
    std::uniform_real_distribution<double> sdist(-0.5, 1.5);
    std::uniform_real_distribution<double> tdist(1.0, 100.0);
    std::bernoulli_distribution flip(0.5);
    double worst = 0.0;
    int points = 0;
    while (points < 200) {
      u64 q = qdist(rng);
      std::vector<dlf::DirichletCharacter> prim;
      for (const auto& chi : dlf::enumerate_characters(q)) {
        if (chi.is_primitive()) prim.push_back(chi);
      }
      if (prim.empty()) continue;  // q = 2 mod 4 has none
      const auto& chi = prim[rng() % prim.size()];
      double sigma = sdist(rng);
      double t = tdist(rng) * (flip(rng) ? 1.0 : -1.0);
      Complex s{sigma, t};
      Complex lhs = dlf::l_value(chi, s).value;
      Complex delta = dlf::delta_factor(s, chi).value;
      Complex rhs = delta * dlf::l_value(chi.conjugate(), 1.0 - s).value;
      double resid = std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
      worst = std::max(worst, resid);
      ++points;
    }
    report(2, worst <= 1e-7,
           "functional equation, 200 random points q<=20: worst residual " +
               fmt(worst) + " (tol 1e-7)",
           seconds_since(t0), 30.0);
  } catch (const std::exception& e) {
    report(2, false, std::string("functional equation: exception: ") + e.what(),
           seconds_since(t0), 30.0);
  }
}

// 3. |Delta(1/2+it)| = 1 and FD log-derivative asymptotics
void criterion3() {
  auto t0 = Clock::now();
  try {
    const std::vector<u64> mods{1, 3, 4, 5, 8, 12};
    double worst_mod = 0.0, worst_ld = 0.0;  // |Delta|-1; scaled FD error
    for (u64 q : mods) {
      auto chi = first_primitive(q);
      for (double t : {20.0, 50.0, 200.0}) {
        Complex s{0.5, t};
        double m = std::abs(dlf::delta_factor(s, chi).value);
        worst_mod = std::max(worst_mod, std::abs(m - 1.0));

        const double h = 1e-4;
        Complex dp = dlf::delta_factor(s + h, chi).value;
        Complex dm = dlf::delta_factor(s - h, chi).value;
        Complex ld = (std::log(dp) - std::log(dm)) / (2.0 * h);
        double target = -std::log(static_cast<double>(q) * t / dlf::kTwoPi);
        // error scaled by t/10 so "within 10/t" reads as <= 1
        worst_ld = std::max(worst_ld, std::abs(ld - target) * t / 10.0);
      }
    }
    bool ok = worst_mod <= 1e-8 && worst_ld <= 1.0;
    report(3, ok,
           "Delta on the critical line: | |Delta|-1 | max " + fmt(worst_mod) +
               " (tol 1e-8); FD log-derivative error " + fmt(worst_ld) +
               " x (10/t)",
           seconds_since(t0), 5.0);
  } catch (const std::exception& e) {
    report(3, false, std::string("Delta checks: exception: ") + e.what(),
           seconds_since(t0), 5.0);
  }
}

// 4. AFE vs Hurwitz within 10x the envelope on a 50-point grid
void criterion4() {
  auto t0 = Clock::now();
  try {
    double worst = 0.0;  // |afe-hurwitz| / envelope
    for (u64 q : {1ull, 3ull, 4ull, 5ull}) {
      auto chi = first_primitive(q);
      for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int k = 0; k < 10; ++k) {
          double t = 10.0 * std::pow(150.0 / 10.0, k / 9.0);
          Complex s{sigma, t};
          double xy = std::sqrt(t / dlf::kTwoPi);
          auto afe = dlf::afe_value(chi, s, xy, xy);
          Complex ref = dlf::l_value(chi, s).value;
          worst = std::max(worst,
                           std::abs(afe.value - ref) / afe.abs_error_bound);
        }
      }
    }
    report(4, worst <= 10.0,
           "AFE cross-path, 50-point grid x q in {1,3,4,5}: worst "
           "|diff|/envelope " +
               fmt(worst) + " (tol 10)",
           seconds_since(t0), 30.0);
  } catch (const std::exception& e) {
    report(4, false, std::string("AFE cross-path: exception: ") + e.what(),
           seconds_since(t0), 30.0);
  }
}

// 5. zero completeness: scan count == argument-principle count
void criterion5() {
  auto t0 = Clock::now();
  try {
    std::string detail;
    bool ok = true;
    for (u64 q : {1ull, 3ull, 4ull, 5ull, 7ull, 8ull, 12ull}) {
      auto chi = first_primitive(q);
      auto list = dlf::scan_zeros(chi, 0.0, 200.0, dlf::ScanConfig{}, 4);
      long long n_arg = dlf::count_zeros_argument_principle(chi, 200.0);
      bool eq = n_arg == static_cast<long long>(list.zeros.size());
      ok = ok && eq;
      detail += "q" + std::to_string(q) + ":" +
                std::to_string(list.zeros.size()) +
                (eq ? "" : ("!=" + std::to_string(n_arg))) + " ";
    }
    auto chi1 = dlf::DirichletCharacter::principal(1);
    auto big = dlf::scan_zeros(chi1, 0.0, 1000.0, dlf::ScanConfig{}, 4);
    long long big_arg = dlf::count_zeros_argument_principle(chi1, 1000.0);
    bool eq1000 = big.zeros.size() == 649 && big_arg == 649;
    ok = ok && eq1000;
    detail += "| q1 T=1000: scan " + std::to_string(big.zeros.size()) +
              ", argument " + std::to_string(big_arg) + " (expect 649)";
    report(5, ok, "zero completeness two-method counts at T=200: " + detail,
           seconds_since(t0), 600.0);
  } catch (const std::exception& e) {
    report(5, false, std::string("zero completeness: exception: ") + e.what(),
           seconds_since(t0), 600.0);
  }
}

// 6. Laurent fits vs closed forms at s=1
void criterion6() {
  auto t0 = Clock::now();
  try {
    const auto& tab = dlf::ConstantsTable::instance();
    const double g0 = tab.gamma0, g1 = tab.gamma1;
    double worst = 0.0;
    for (u64 q : {1ull, 6ull, 12ull}) {
      double A = static_cast<double>(dlf::euler_phi(q)) / static_cast<double>(q);
      double S = 0.0, P = 0.0;
      for (const auto& pp : dlf::factorize(q)) {
        double p = static_cast<double>(pp.p), lp = std::log(p);
        S += lp / (p - 1.0);
        P += p * lp * lp / ((p - 1.0) * (p - 1.0));
      }
      auto fit = dlf::laurent_check_principal(q);
      worst = std::max(worst, std::abs(fit.lprime_m2 - (-A)));
      worst = std::max(worst, std::abs(fit.lprime_m1 - 0.0));
      worst = std::max(worst,
                       std::abs(fit.lprime_0 -
                                A * (0.5 * S * S - 0.5 * P + g0 * S - g1)));
      worst = std::max(worst, std::abs(fit.llog_m1 - (-1.0)));
      worst = std::max(worst, std::abs(fit.llog_0 - (g0 + S)));
      worst = std::max(worst, std::abs(fit.llog_1 - (tab.eta[1] - P)));
    }
    report(6, worst <= 1e-6,
           "Laurent fits at s=1, q in {1,6,12}: worst coefficient error " +
               fmt(worst) + " (tol 1e-6)",
           seconds_since(t0), 10.0);
  } catch (const std::exception& e) {
    report(6, false, std::string("Laurent fits: exception: ") + e.what(),
           seconds_since(t0), 10.0);
  }
}

// 7. zero-sum main term at q=1 over T in {100,200,500,1000}
void criterion7() {
  auto t0 = Clock::now();
  try {
    auto chi = dlf::DirichletCharacter::principal(1);
    auto rep = dlf::compare(chi, {100.0, 200.0, 500.0, 1000.0},
                            dlf::ScanConfig{}, 4);
    bool ok = true;
    std::string fracs;
    for (const auto& row : rep.rows) {
      double fr = std::abs(row.remainder.real()) / row.main_term;
      fracs += fmt(fr) + " ";
      ok = ok && fr <= 0.10;
    }
    const auto& last = rep.rows.back();
    double fr1000 = std::abs(last.remainder.real()) / last.main_term;
    double im1000 = std::abs(last.empirical.imag()) / last.main_term;
    ok = ok && fr1000 <= 0.03 && im1000 <= 0.03;
    ok = ok && rep.fitted_C.has_value() && *rep.fitted_C <= 5.0;
    report(7, ok,
           "zero-sum main term q=1: |Re R|/M = { " + fracs +
               "} (<=0.10, last <=0.03); "
           "|Im S|/M(1000) = " + fmt(im1000) + " (<=0.03); C = " +
               fmt(rep.fitted_C.value_or(-1.0)) + " (<=5)",
           seconds_since(t0), 900.0);
  } catch (const std::exception& e) {
    report(7, false,
           std::string("zero-sum main term q=1: exception: ") + e.what(),
           seconds_since(t0), 900.0);
  }
}

// 8. zero-sum main term for all primitive characters mod 3, 4, 5
void criterion8() {
  auto t0 = Clock::now();
  try {
    bool ok = true;
    std::string detail;
    std::vector<double> improvement;  // frac(largest T) - frac(smallest T)
    for (u64 q : {3ull, 4ull, 5ull}) {
      for (const auto& chi : dlf::enumerate_characters(q)) {
        if (!chi.is_primitive()) continue;
        auto rep = dlf::compare(chi, {50.0, 100.0, 200.0, 500.0},
                                dlf::ScanConfig{}, 4);
        double f_first =
            std::abs(rep.rows.front().remainder) / rep.rows.front().main_term;
        double f_last =
            std::abs(rep.rows.back().remainder) / rep.rows.back().main_term;
        improvement.push_back(f_last - f_first);
        ok = ok && f_last <= 0.10;
        detail += chi.label() + ":" + fmt(f_last) + " ";
        // default path: the a3 term is identically zero
        if (dlf::a3_term(std::nullopt, chi, 500.0) != Complex{0.0, 0.0}) {
          ok = false;
        }
      }
    }
    std::sort(improvement.begin(), improvement.end());
    double median = improvement[improvement.size() / 2];
    ok = ok && median <= 0.0;
    report(8, ok,
           "zero-sum main term q in {3,4,5} all primitive: |R|/M at T=500 { " +
               detail +
               "} (<=0.10); median improvement " + fmt(median) +
               " (<=0); a3 = 0 on default path",
           seconds_since(t0), 1200.0);
  } catch (const std::exception& e) {
    report(8, false,
           std::string("zero-sum main term q in {3,4,5}: exception: ") +
               e.what(),
           seconds_since(t0), 1200.0);
  }
}

// 9. constants regression: symbolic q=1 reduction and two-method agreement
void criterion9() {
  auto t0 = Clock::now();
  try {
    const auto& tab = dlf::ConstantsTable::instance();
    const double g0 = tab.gamma0, g1 = tab.gamma1;
    auto c1 = dlf::constants(1);
    bool symbolic = c1.euler_log_sum == 0.0 && c1.euler_log2_sum == 0.0 &&
                    c1.a1 == g0 - 1.0 && c1.a2 == 1.0 - g0 - g0 * g0 - g1;

    // Laurent fit of the q=1 principal function is an independent method
    auto fit = dlf::laurent_check_principal(1);
    double d_g0 = std::abs(fit.llog_0 - g0);        // gamma_0 from L'/L
    double d_g1 = std::abs(-fit.lprime_0 - g1);     // gamma_1 from L'
    double d_eta1 = std::abs(fit.llog_1 - tab.eta[1]);
    bool ok = symbolic && d_g0 <= 1e-5 && d_g1 <= 1e-5 && d_eta1 <= 1e-5;
    report(9, ok,
           "constants regression: symbolic q=1 reduction " +
               std::string(symbolic ? "exact" : "BROKEN") +
               "; two-method gamma0/gamma1/eta1 deltas " + fmt(d_g0) + "/" +
               fmt(d_g1) + "/" + fmt(d_eta1) + " (tol 1e-5)",
           seconds_since(t0), 60.0);
  } catch (const std::exception& e) {
    report(9, false,
           std::string("constants regression: exception: ") + e.what(),
           seconds_since(t0), 60.0);
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures;
}
