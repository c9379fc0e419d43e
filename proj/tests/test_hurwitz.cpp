#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "dlf/hurwitz.hpp"
#include "oracles.hpp"

using dlf::Complex;
using dlf::EulerMaclaurinConfig;

TEST_CASE("hurwitz_zeta: zeta(2) against the direct-sum oracle", "[hurwitz]") {
  double oracle = oracles::zeta_direct(2.0, 10000000L);
  double engine = dlf::hurwitz_zeta({2.0, 0.0}, 1.0).real();
  CHECK_THAT(engine, Catch::Matchers::WithinAbs(oracle, 2e-12));
  CHECK_THAT(engine, Catch::Matchers::WithinAbs(
                         dlf::kPi * dlf::kPi / 6.0, 1e-12));
  CHECK(std::abs(dlf::hurwitz_zeta({2.0, 0.0}, 1.0).imag()) <= 1e-14);
}

TEST_CASE("hurwitz_zeta: a=1/2 identity", "[hurwitz]") {
  // zeta(s, 1/2) = (2^s - 1) zeta(s)
  for (double s : {2.0, 3.0, 1.7}) {
    double lhs = dlf::hurwitz_zeta({s, 0.0}, 0.5).real();
    double rhs =
        (std::pow(2.0, s) - 1.0) * dlf::hurwitz_zeta({s, 0.0}, 1.0).real();
    CHECK_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-11));
  }
  CHECK_THAT(dlf::hurwitz_zeta({2.0, 0.0}, 0.5).real(),
             Catch::Matchers::WithinAbs(4.93480220054468, 1e-11));
}

TEST_CASE("hurwitz_zeta: closed forms at s=0 and s=-1", "[hurwitz]") {
  for (double a : {0.3, 1.0, 0.71, 0.05}) {
    CHECK_THAT(dlf::hurwitz_zeta({0.0, 0.0}, a).real(),
               Catch::Matchers::WithinAbs(0.5 - a, 1e-13));
    // the bracket terms at s=-1 are O(N^2) against an O(1) answer, so a few
    // hundred ulps of cancellation roundoff is the attainable floor
    CHECK_THAT(dlf::hurwitz_zeta({-1.0, 0.0}, a).real(),
               Catch::Matchers::WithinAbs(-(a * a - a + 1.0 / 6.0) / 2.0,
                                           1e-12));
  }
}

TEST_CASE("hurwitz_zeta: zeta(3) and zeta'(2) reference values", "[hurwitz]") {
  CHECK_THAT(dlf::hurwitz_zeta({3.0, 0.0}, 1.0).real(),
             Catch::Matchers::WithinAbs(1.2020569031595943, 2e-12));
  double zp2_oracle = oracles::zeta_prime_direct(2.0, 10000000L);
  double zp2 = dlf::hurwitz_zeta_ds({2.0, 0.0}, 1.0).real();
  CHECK_THAT(zp2, Catch::Matchers::WithinAbs(zp2_oracle, 5e-13));
  CHECK_THAT(zp2, Catch::Matchers::WithinAbs(-0.9375482543158437, 2e-12));
}

TEST_CASE("hurwitz_zeta_ds: finite-difference cross-checks", "[hurwitz]") {
  auto f = [](Complex s) { return dlf::hurwitz_zeta(s, 0.7); };
  Complex s0{2.0, 3.0};
  Complex fd = oracles::fd_derivative(f, s0, 1e-5);
  Complex an = dlf::hurwitz_zeta_ds(s0, 0.7);
  CHECK(std::abs(fd - an) <= 1e-6);

  // 100 random points in sigma in [-1, 2], |t| <= 50
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> sig(-1.0, 2.0), tt(-50.0, 50.0),
      aa(0.05, 1.0);
  for (int i = 0; i < 100; ++i) {
    Complex s{sig(rng), tt(rng)};
    if (std::abs(s - Complex(1.0, 0.0)) < 0.05) continue;
    double a = aa(rng);
    auto g = [a](Complex z) { return dlf::hurwitz_zeta(z, a); };
    Complex fd2 = oracles::fd_derivative(g, s, 1e-5);
    Complex an2 = dlf::hurwitz_zeta_ds(s, a);
    CHECK(std::abs(fd2 - an2) <= 1e-6 * std::max(1.0, std::abs(an2)));
  }
}

TEST_CASE("hurwitz_zeta_ds: known value at s=0", "[hurwitz]") {
  // d/ds zeta(s, 1) at s=0 equals -log(2 pi)/2
  CHECK_THAT(dlf::hurwitz_zeta_ds({0.0, 0.0}, 1.0).real(),
             Catch::Matchers::WithinAbs(-0.5 * std::log(2.0 * dlf::kPi),
                                         1e-12));
}

TEST_CASE("hurwitz_zeta: Schwarz reflection", "[hurwitz]") {
  for (Complex s : {Complex(0.5, 14.0), Complex(-0.3, 22.0), Complex(1.4, 3.0)}) {
    for (double a : {1.0, 0.25, 0.8}) {
      Complex lhs = dlf::hurwitz_zeta(std::conj(s), a);
      Complex rhs = std::conj(dlf::hurwitz_zeta(s, a));
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("hurwitz_zeta: engine self-consistency across configs",
          "[hurwitz]") {
  // Same value from the default config and a much larger shift.
  for (Complex s : {Complex(0.5, 14.0), Complex(2.0, 0.0), Complex(0.5, 49.0)}) {
    auto loose = EulerMaclaurinConfig::for_height(std::abs(s.imag()), 1e-12);
    auto tight = EulerMaclaurinConfig{loose.shift_terms * 2, 14, 1e-13};
    Complex v1 = dlf::hurwitz_zeta(s, 1.0, loose);
    Complex v2 = dlf::hurwitz_zeta(s, 1.0, tight);
    CHECK(std::abs(v1 - v2) <= 1e-11);
  }
}

TEST_CASE("hurwitz_zeta: self-estimate behavior", "[hurwitz]") {
  //

  // doubling N shrinks the self-estimate while truncation dominates (low
  // correction order keeps the omitted-term estimate far above roundoff)
  Complex s{0.5, 40.0};
  auto cfg1 = EulerMaclaurinConfig{35, 3, 1.0};
  auto cfg2 = EulerMaclaurinConfig{70, 3, 1.0};
  auto r1 = dlf::detail::hurwitz_core(s, 1.0, cfg1, true);
  auto r2 = dlf::detail::hurwitz_core(s, 1.0, cfg2, true);
  CHECK(r2.err_value <= r1.err_value);
  CHECK(r2.err_ds <= r1.err_ds);
  // and the two values agree within the wider of the two claims
  CHECK(std::abs(r1.value - r2.value) <= 4.0 * r1.err_value);

  // insufficient config for an aggressive target -> error
  auto bad = EulerMaclaurinConfig{30, 12, 1e-30};
  CHECK_THROWS_AS(dlf::hurwitz_zeta({2.0, 40.0}, 1.0, bad),
                  dlf::AccuracyError);

  // height beyond the documented validity region -> error
  auto low = EulerMaclaurinConfig{30, 12, 1e-8};
  CHECK_THROWS_AS(dlf::hurwitz_zeta({0.5, 500.0}, 1.0, low),
                  dlf::DomainError);
}

TEST_CASE("hurwitz_zeta: domain errors", "[hurwitz]") {
  CHECK_THROWS_AS(dlf::hurwitz_zeta({1.0, 0.0}, 1.0), dlf::PoleError);
  CHECK_THROWS_AS(dlf::hurwitz_zeta({2.0, 0.0}, 0.0), dlf::DomainError);
  CHECK_THROWS_AS(dlf::hurwitz_zeta({2.0, 0.0}, 1.5), dlf::DomainError);
  CHECK_THROWS_AS(dlf::hurwitz_zeta({2.0, 0.0}, -0.2), dlf::DomainError);
}

TEST_CASE("hurwitz_zeta: high-point reference from tight config", "[hurwitz]") {
  // value at s = 1/2 + 14i, a = 1 agrees between default and reference
  // configs to 1e-11 (the engine is its own tighter-config oracle here)
  Complex s{0.5, 14.0};
  Complex v = dlf::hurwitz_zeta(s, 1.0);
  Complex ref = dlf::hurwitz_zeta(s, 1.0, EulerMaclaurinConfig{400, 14, 1e-13});
  CHECK(std::abs(v - ref) <= 1e-11);
}
