#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "dlf/characters.hpp"
#include "dlf/error.hpp"
#include "dlf/gamma.hpp"
#include "dlf/lfunc.hpp"
#include "dlf/numeric.hpp"

namespace dlf {

// One located critical-line zero: ordinate, final bracket half-width, and
// the signs of rotated_Z at the final bracket ends.
struct ZeroRecord {
  double gamma = 0.0;
  double residual_halfwidth = 0.0;
  int z_sign_left = 0;
  int z_sign_right = 0;
};

// Ordered zeros of L(s, chi) on the critical line up to t_max, optionally
// carrying the argument-principle completeness certificate.
struct ZeroList {
  DirichletCharacter chi;
  double t_max = 0.0;
  std::vector<ZeroRecord> zeros;
  std::optional<long long> certified_count;
};

// Grid policy for scanning: points per expected zero spacing, refinement
// tolerance, and the lower clip for the first grid point.
struct ScanConfig {
  double grid_factor = 8.0;
  double refine_tol = 1e-9;
  double t_min = 1e-3;

  void validate() const {
    if (!(grid_factor >= 4.0)) {
      throw DomainError("ScanConfig: grid_factor must be >= 4");
    }
    if (!(refine_tol > 0.0) || refine_tol > 1e-9) {
      throw DomainError("ScanConfig: refine_tol must lie in (0, 1e-9]");
    }
    if (!(t_min > 0.0)) throw DomainError("ScanConfig: t_min must be > 0");
  }
};

namespace detail {

inline int sgn(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

// Run f(i) for i in [0, n), optionally across threads. Each index writes
// only its own slot, so results are deterministic regardless of thread
// count or scheduling.
template <typename F>
inline void parallel_over(std::size_t n, int threads, F&& f) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 8;
  auto worker = [&]() {
    for (;;) {
      std::size_t base = next.fetch_add(kChunk);
      if (base >= n) return;
      std::size_t end = std::min(base + kChunk, n);
      for (std::size_t i = base; i < end; ++i) f(i);
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < threads - 1; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Refine a sign-change bracket of rotated_Z to half-width <= tol by
// bisection, accelerated by secant steps that never leave the bracket. The
// returned gamma additionally satisfies |Z(gamma)| <= |Z| at both final
// bracket ends.
inline ZeroRecord refine_zero(const DirichletCharacter& chi,
                              std::pair<double, double> bracket, double tol) {
  double a = bracket.first, b = bracket.second;
  if (!(a < b)) throw DomainError("refine_zero: bracket must satisfy a < b");
  if (!(tol > 0.0) || tol > 1e-3) {
    throw DomainError("refine_zero: tol must lie in (0, 1e-3]");
  }
  double za = rotated_Z(chi, a);
  double zb = rotated_Z(chi, b);
  if (detail::sgn(za) * detail::sgn(zb) >= 0) {
    throw DomainError(
        "refine_zero: bracket endpoints must have strictly opposite signs");
  }
  while (0.5 * (b - a) > tol) {
    double w = b - a;
    double c = b - zb * w / (zb - za);  // secant proposal
    if (!(c >= a + 0.1 * w && c <= b - 0.1 * w)) c = a + 0.5 * w;
    double zc = rotated_Z(chi, c);
    if (zc == 0.0) {
      return ZeroRecord{c, 0.0, detail::sgn(za), detail::sgn(zb)};
    }
    if (detail::sgn(zc) == detail::sgn(za)) {
      a = c;
      za = zc;
    } else {
      b = c;
      zb = zc;
    }
  }
  // polish until the midpoint residual is no larger than either end's, up
  // to the evaluation noise floor (secant endpoints can land within noise
  // distance of the root, making sub-noise comparisons meaningless)
  const double kNoise = 1e-11;
  double gamma = 0.5 * (a + b);
  double zg = rotated_Z(chi, gamma);
  for (int guard = 0; guard < 80; ++guard) {
    if (zg == 0.0 || std::abs(zg) <= kNoise) break;
    if (std::abs(zg) <= std::min(std::abs(za), std::abs(zb))) break;
    if (0.5 * (b - a) <= 4e-15 * (1.0 + std::abs(gamma))) break;
    if (detail::sgn(zg) == detail::sgn(za)) {
      a = gamma;
      za = zg;
    } else {
      b = gamma;
      zb = zg;
    }
    gamma = 0.5 * (a + b);
    zg = rotated_Z(chi, gamma);
  }
  return ZeroRecord{gamma, 0.5 * (b - a), detail::sgn(za), detail::sgn(zb)};
}

// Scan (t0, t1] for sign changes of rotated_Z on a grid with local step
// 1 / (grid_factor * log(q (t+2))), refine each to a ZeroRecord, and apply
// the near-tangency and local-density alarms. Grid evaluation may be
// parallelized; the output is identical for any thread count.
inline ZeroList scan_zeros(const DirichletCharacter& chi, double t0, double t1,
                           const ScanConfig& cfg = ScanConfig{},
                           int threads = 1) {
  cfg.validate();
  if (!chi.is_primitive()) {
    throw DomainError("scan_zeros: chi must be primitive");
  }
  if (!(t0 >= 0.0) || !(t0 <= t1)) {
    throw DomainError("scan_zeros: need 0 <= t0 <= t1");
  }
  ZeroList out{chi, t1, {}, std::nullopt};
  if (t0 == t1) return out;

  const double q = static_cast<double>(chi.modulus());
  std::vector<double> ts;
  {
    double t = std::max(t0, cfg.t_min);
    ts.push_back(t);
    while (t < t1) {
      double step = 1.0 / (cfg.grid_factor * std::log(q * (t + 2.0)));
      t = std::min(t + step, t1);
      ts.push_back(t);
    }
  }
  std::vector<double> zs(ts.size());
  detail::parallel_over(ts.size(), threads, [&](std::size_t i) {
    double z = rotated_Z(chi, ts[i]);
    for (int tries = 0; z == 0.0 && tries < 3; ++tries) {
      ts[i] += 1e-12;  // nudge an exact grid hit; preserves ordering
      z = rotated_Z(chi, ts[i]);
    }
    zs[i] = z;
  });

  std::vector<ZeroRecord> found;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (detail::sgn(zs[i]) * detail::sgn(zs[i + 1]) < 0) {
      found.push_back(refine_zero(chi, {ts[i], ts[i + 1]}, cfg.refine_tol));
      continue;
    }
    // near-tangency alarm: a same-sign local minimum of |Z| dipping below
    // 1e-6 gets a 16x finer local grid; an unresolved dip is an error, never
    // a silent multiplicity assumption
    if (i >= 1 && std::abs(zs[i]) < 1e-6 &&
        std::abs(zs[i]) < std::abs(zs[i - 1]) &&
        std::abs(zs[i]) < std::abs(zs[i + 1]) &&
        detail::sgn(zs[i - 1]) == detail::sgn(zs[i]) &&
        detail::sgn(zs[i]) == detail::sgn(zs[i + 1])) {
      const int kSub = 32;
      double lo = ts[i - 1], hi = ts[i + 1];
      double prev_t = lo, prev_z = zs[i - 1];
      bool resolved = false;
      double min_abs = std::abs(zs[i]);
      for (int k = 1; k <= kSub; ++k) {
        double tk = lo + (hi - lo) * static_cast<double>(k) / kSub;
        double zk = rotated_Z(chi, tk);
        min_abs = std::min(min_abs, std::abs(zk));
        if (detail::sgn(prev_z) * detail::sgn(zk) < 0) {
          found.push_back(refine_zero(chi, {prev_t, tk}, cfg.refine_tol));
          resolved = true;
        }
        prev_t = tk;
        prev_z = zk;
      }
      if (!resolved && min_abs < 1e-6) {
        throw AccuracyError(
            "scan_zeros: unresolved near-tangency of Z near t = " +
            std::to_string(ts[i]) +
            " (possible double zero; refine manually)");
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [](const ZeroRecord& x, const ZeroRecord& y) {
              return x.gamma < y.gamma;
            });
  for (std::size_t i = 0; i + 1 < found.size(); ++i) {
    if (!(found[i].gamma < found[i + 1].gamma)) {
      throw AccuracyError("scan_zeros: non-increasing refined ordinates");
    }
  }
  // local density alarm against the expected O(log q(t+2)) spacing law
  for (std::size_t j = 0, i = 0; j < found.size(); ++j) {
    while (found[j].gamma - found[i].gamma > 1.0) ++i;
    double tw = std::max(0.0, found[j].gamma - 1.0);
    double cap = std::ceil(3.0 * std::log(q * (tw + 2.0)));
    if (static_cast<double>(j - i + 1) > cap) {
      throw AccuracyError("scan_zeros: local zero density exceeds alarm cap");
    }
  }
  out.zeros = std::move(found);
  return out;
}

namespace detail {

// Phase (mod 2pi) of the completed function whose zeros in the rectangle are
// exactly the nontrivial zeros: xi(s) for q = 1 (entire, so the contour may
// pass near s = 0, 1 safely), Lambda(s, chi) for primitive chi, q > 1. Branch
// cuts of the individual summands are harmless: callers use only wrapped
// increments of this value.
inline double completed_phase(const DirichletCharacter& chi,
                              const Complex& s) {
  if (chi.modulus() == 1) {
    Complex z = hurwitz_zeta(s, 1.0, default_l_config(s));
    return std::arg(z) + std::imag(std::log(s) + std::log(s - 1.0)) -
           0.5 * s.imag() * std::log(kPi) + std::imag(log_gamma(0.5 * s));
  }
  const double kappa = static_cast<double>(chi.parity_kappa());
  Complex L = l_core(chi, s, default_l_config(s), false).value;
  return std::arg(L) +
         0.5 * s.imag() * std::log(static_cast<double>(chi.modulus()) / kPi) +
         std::imag(log_gamma(0.5 * (s + kappa)));
}

// Continuity-tracked phase change along the segment p0 -> p1. Wrapped
// increments see changes only mod 2pi, so the segment is first cut into an
// initial mesh dense enough (from the log q(t+2) phase-rate bound) that a
// whole turn cannot hide between neighbours; adaptive bisection then refines
// any remaining increment to below pi/2.
inline double edge_phase_change(
    const std::function<double(const Complex&)>& phase, const Complex& p0,
    const Complex& p1, double q) {
  std::function<double(const Complex&, double, const Complex&, double, int)>
      rec = [&](const Complex& a, double pa, const Complex& b, double pb,
                int depth) -> double {
    double d = wrap_angle(pb - pa);
    if (std::abs(d) < 0.5 * kPi) return d;
    if (depth >= 48) {
      throw AccuracyError(
          "argument principle: phase step >= pi/2 at the minimal mesh "
          "(zero on or extremely near the contour?)");
    }
    Complex m = 0.5 * (a + b);
    double pm = phase(m);
    return rec(a, pa, m, pm, depth + 1) + rec(m, pm, b, pb, depth + 1);
  };

  std::vector<Complex> pts;
  pts.push_back(p0);
  if (p0.real() == p1.real()) {
    // vertical edge: step well below the local zero spacing
    const double dir = (p1.imag() > p0.imag()) ? 1.0 : -1.0;
    double t = p0.imag();
    while ((p1.imag() - t) * dir > 0.0) {
      double step =
          std::min(0.25, 1.0 / (4.0 * std::log(q * (std::abs(t) + 2.0))));
      t += dir * step;
      if ((p1.imag() - t) * dir <= 0.0) break;
      pts.emplace_back(p0.real(), t);
    }
  } else {
    // horizontal edge of length ~2: a fixed fine mesh suffices
    const int kPieces = 64;
    for (int k = 1; k < kPieces; ++k) {
      pts.push_back(p0 + (p1 - p0) * (static_cast<double>(k) / kPieces));
    }
  }
  pts.push_back(p1);

  CompensatedSum acc;
  double ph_prev = phase(pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    double ph_next = phase(pts[i]);
    acc.add(rec(pts[i - 1], ph_prev, pts[i], ph_next, 0));
    ph_prev = ph_next;
  }
  return acc.value();
}

}  // namespace detail

// Number of zeros of the completed L-function inside the rectangle
// sigma in (-0.6, 1.6), t in (1e-3, T), by the winding number of its phase
// along the boundary. Choose T away from zero ordinates (e.g. snapped to a
// gap midpoint); a zero on or near the contour fails the mesh refinement.
inline long long count_zeros_argument_principle(const DirichletCharacter& chi,
                                                double T) {
  if (!chi.is_primitive()) {
    throw DomainError("count_zeros_argument_principle: chi must be primitive");
  }
  if (!(T > 0.0)) {
    throw DomainError("count_zeros_argument_principle: T must be > 0");
  }
  const double sigma_lo = -0.6, sigma_hi = 1.6, t_b = 1e-3;
  if (T <= t_b) return 0;
  auto phase = [&chi](const Complex& s) {
    return detail::completed_phase(chi, s);
  };
  const std::array<Complex, 4> corner{Complex{sigma_lo, t_b},
                                      Complex{sigma_hi, t_b},
                                      Complex{sigma_hi, T},
                                      Complex{sigma_lo, T}};
  CompensatedSum total;
  const double q = static_cast<double>(chi.modulus());
  for (int e = 0; e < 4; ++e) {
    total.add(detail::edge_phase_change(
        phase, corner[static_cast<std::size_t>(e)],
        corner[static_cast<std::size_t>((e + 1) % 4)], q));
  }
  double winding = total.value() / kTwoPi;
  long long n = std::llround(winding);
  if (std::abs(winding - static_cast<double>(n)) > 1e-3) {
    throw AccuracyError(
        "argument principle: winding ≈ " + std::to_string(winding) +
        " is not close to an integer");
  }
  if (n < 0) {
    throw AccuracyError("argument principle: negative winding number");
  }
  return n;
}

// Attach the argument-principle certificate to a scan over (0, T]. On a
// count mismatch, bisect by height to localize the smallest suspicious
// interval and throw a CertificateError naming it.
inline ZeroList verify_completeness(const ZeroList& list) {
  ZeroList out = list;
  const long long scanned = static_cast<long long>(out.zeros.size());
  if (out.t_max <= 0.0 || (out.zeros.empty() && out.t_max == 0.0)) {
    out.certified_count = 0;
    return out;
  }

  auto count_at = [&](double T) -> long long {
    // retry ladder in case T sits essentially on a zero ordinate; a shifted
    // height is usable only when no scanned zero lies between T and it
    const std::array<double, 3> shift{0.0, 1.3e-2, -1.7e-2};
    for (std::size_t k = 0; k < shift.size(); ++k) {
      double Tk = T + shift[k];
      if (Tk <= 0.0) continue;
      bool zero_between = false;
      for (const auto& z : out.zeros) {
        double a = std::min(T, Tk), b = std::max(T, Tk);
        if (z.gamma > a && z.gamma <= b) zero_between = true;
      }
      if (zero_between) continue;
      try {
        return count_zeros_argument_principle(out.chi, Tk);
      } catch (const AccuracyError&) {
        if (k + 1 == shift.size()) throw;
      }
    }
    throw AccuracyError("verify_completeness: could not evaluate the count");
  };

  long long certified = count_at(out.t_max);
  if (certified == scanned) {
    out.certified_count = certified;
    return out;
  }

  auto scan_count_below = [&](double T) -> long long {
    long long c = 0;
    for (const auto& z : out.zeros) {
      if (z.gamma <= T) ++c;
    }
    return c;
  };
  double lo = 0.0, hi = out.t_max;
  long long cert_lo = 0, cert_hi = certified;
  long long scan_lo = 0, scan_hi = scanned;
  while (hi - lo > 1.0) {
    double mid = 0.5 * (lo + hi);
    long long cm = count_at(mid);
    long long sm = scan_count_below(mid);
    if (cm - cert_lo != sm - scan_lo) {
      hi = mid;
      cert_hi = cm;
      scan_hi = sm;
    } else {
      lo = mid;
      cert_lo = cm;
      scan_lo = sm;
    }
  }
  throw CertificateError(
      "verify_completeness: zero count mismatch in (" + std::to_string(lo) +
      ", " + std::to_string(hi) + "]: scan found " +
      std::to_string(scan_hi - scan_lo) + ", argument principle counts " +
      std::to_string(cert_hi - cert_lo));
}

// Snap T to the midpoint of the zero gap containing it, so that sums over
// 0 < gamma <= T are unambiguous. The list must extend beyond T.
inline double snap_to_gap_midpoint(const ZeroList& list, double T) {
  if (!(T > 0.0)) throw DomainError("snap_to_gap_midpoint: T must be > 0");
  double lo = 0.0;
  for (const auto& z : list.zeros) {
    if (z.gamma <= T) {
      lo = z.gamma;
    } else {
      return 0.5 * (lo + z.gamma);
    }
  }
  throw DomainError(
      "snap_to_gap_midpoint: the zero list does not extend beyond T; scan "
      "further");
}

}  // namespace dlf
