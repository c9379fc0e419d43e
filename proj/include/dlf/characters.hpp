#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlf/error.hpp"
#include "dlf/numeric.hpp"

namespace dlf {

using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// Modular inverse of a mod m (m >= 1, gcd(a, m) = 1) via extended Euclid.
inline u64 inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  long long r0 = static_cast<long long>(m), r1 = static_cast<long long>(a % m);
  long long x0 = 0, x1 = 1;
  while (r1 != 0) {
    long long quot = r0 / r1;
    long long r2 = r0 - quot * r1;
    long long x2 = x0 - quot * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  if (r0 != 1) throw DomainError("inv_mod: arguments are not coprime");
  long long x = x0 % static_cast<long long>(m);
  if (x < 0) x += static_cast<long long>(m);
  return static_cast<u64>(x);
}

struct PrimePower {
  u64 p;
  unsigned e;
  u64 pe;
};

inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      PrimePower f{p, 0, 1};
      while (n % p == 0) {
        n /= p;
        ++f.e;
        f.pe *= p;
      }
      out.push_back(f);
    }
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

inline u64 euler_phi(u64 n) {
  u64 phi = 1;
  for (const auto& f : factorize(n)) phi *= (f.pe / f.p) * (f.p - 1);
  return phi;
}

inline std::vector<u64> divisors_ascending(u64 n) {
  std::vector<u64> d;
  for (u64 i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      d.push_back(i);
      if (i != n / i) d.push_back(n / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Smallest primitive root mod p^e for an odd prime p. A primitive root g mod
// p that also satisfies g^(p-1) != 1 mod p^2 generates (Z/p^e)^* for every e.
inline u64 primitive_root_odd_prime_power(u64 p, u64 pe) {
  u64 phi_p = p - 1;
  std::vector<u64> prime_factors;
  for (const auto& f : factorize(phi_p)) prime_factors.push_back(f.p);
  u64 g = 2;
  for (;; ++g) {
    bool ok = true;
    for (u64 ell : prime_factors) {
      if (pow_mod(g, phi_p / ell, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  if (pe > p) {
    if (pow_mod(g, p - 1, p * p) == 1) g += p;
  }
  return g % pe;
}

// One cyclic factor of (Z/qZ)^*: a generator residue and its order, local to
// the prime power it belongs to.
struct CyclicFactor {
  u64 modulus;    // the prime power this factor lives in
  u64 generator;  // residue mod `modulus`
  u64 order;
};

// Structure of (Z/qZ)^* as a product of cyclic groups, with discrete-log
// tables for constant-time exponent-vector lookups. Immutable after
// construction and freely shareable across threads.
class UnitGroup {
 public:
  explicit UnitGroup(u64 q) : q_(q) {
    if (q == 0) throw DomainError("UnitGroup: modulus must be positive");
    factorization_ = factorize(q);
    phi_ = 1;
    for (const auto& f : factorization_) phi_ *= (f.pe / f.p) * (f.p - 1);

    for (const auto& f : factorization_) {
      if (f.p == 2) {
        if (f.e == 1) continue;  // (Z/2)^* is trivial
        if (f.e == 2) {
          factors_.push_back({4, 3, 2});
          dlog_.emplace_back(4, kNoLog);
          dlog_.back()[1] = 0;
          dlog_.back()[3] = 1;
          continue;
        }
        // 2^e, e >= 3: <-1> x <5>, orders 2 and 2^(e-2)
        u64 m = f.pe;
        factors_.push_back({m, m - 1, 2});
        factors_.push_back({m, 5, m / 4});
        std::vector<u64> sign_log(m, kNoLog), five_log(m, kNoLog);
        u64 r = 1;
        for (u64 j = 0; j < m / 4; ++j) {
          sign_log[r] = 0;
          five_log[r] = j;
          u64 nr = m - r;
          sign_log[nr] = 1;
          five_log[nr] = j;
          r = mul_mod(r, 5, m);
        }
        dlog_.push_back(std::move(sign_log));
        dlog_.push_back(std::move(five_log));
      } else {
        u64 m = f.pe;
        u64 order = (m / f.p) * (f.p - 1);
        u64 g = primitive_root_odd_prime_power(f.p, m);
        factors_.push_back({m, g, order});
        std::vector<u64> table(m, kNoLog);
        u64 r = 1;
        for (u64 j = 0; j < order; ++j) {
          table[r] = j;
          r = mul_mod(r, g, m);
        }
        dlog_.push_back(std::move(table));
      }
    }

    exponent_ = 1;
    for (const auto& f : factors_) exponent_ = std::lcm(exponent_, f.order);
  }

  u64 modulus() const { return q_; }
  u64 phi() const { return phi_; }
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  const std::vector<PrimePower>& factorization() const {
    return factorization_;
  }
  // lcm of the cyclic factor orders (the exponent of the group)
  u64 exponent() const { return exponent_; }

  // Exponent vector of n on the generators, or nullopt when gcd(n,q) > 1.
  std::optional<std::vector<u64>> discrete_log(u64 n) const {
    u64 r0 = n % q_;
    if (std::gcd(r0, q_) != 1) return std::nullopt;
    std::vector<u64> exps(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      u64 r = r0 % factors_[i].modulus;
      u64 v = dlog_[i][r];
      if (v == kNoLog)
        throw Error("UnitGroup: discrete log table inconsistency");
      exps[i] = v;
    }
    return exps;
  }

 private:
  static constexpr u64 kNoLog = ~u64{0};
  u64 q_;
  u64 phi_;
  u64 exponent_ = 1;
  std::vector<PrimePower> factorization_;
  std::vector<CyclicFactor> factors_;
  std::vector<std::vector<u64>> dlog_;
};

// A Dirichlet character mod q, represented by its exponent vector on the
// fixed generators of (Z/qZ)^*. All structural operations (conjugation,
// multiplication, primitivity) are exact integer arithmetic; the complex
// value table is a derived cache. Immutable and shareable across threads.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const UnitGroup> group,
                     std::vector<u64> exponents)
      : group_(std::move(group)), exps_(std::move(exponents)) {
    const auto& factors = group_->factors();
    if (exps_.size() != factors.size())
      throw DomainError(
          "DirichletCharacter: exponent vector length must match the number "
          "of cyclic factors");
    for (std::size_t i = 0; i < exps_.size(); ++i) exps_[i] %= factors[i].order;
    build_value_table();
    compute_parity();
    compute_conductor();
  }

  static DirichletCharacter principal(u64 q) {
    auto g = std::make_shared<const UnitGroup>(q);
    return DirichletCharacter(g, std::vector<u64>(g->factors().size(), 0));
  }

  u64 modulus() const { return group_->modulus(); }
  const UnitGroup& group() const { return *group_; }
  std::shared_ptr<const UnitGroup> group_ptr() const { return group_; }
  const std::vector<u64>& exponents() const { return exps_; }

  // Mixed-radix index of the exponent vector: factor 0 is the least
  // significant digit. Index 0 is always the principal character.
  u64 index() const {
    u64 idx = 0, weight = 1;
    const auto& factors = group_->factors();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      idx += exps_[i] * weight;
      weight *= factors[i].order;
    }
    return idx;
  }

  // Canonical label "q.k" with k the mixed-radix index.
  std::string label() const {
    return std::to_string(modulus()) + "." + std::to_string(index());
  }

  // Exact value representation: chi(n) = exp(2*pi*i * num / L) with
  // L = group exponent, or nullopt when gcd(n,q) > 1.
  std::optional<std::pair<u64, u64>> value_exponent(long long n) const {
    u64 q = modulus();
    long long r = n % static_cast<long long>(q);
    if (r < 0) r += static_cast<long long>(q);
    long long v = value_num_[static_cast<std::size_t>(r)];
    if (v < 0) return std::nullopt;
    return std::make_pair(static_cast<u64>(v), L_);
  }

  Complex value(long long n) const {
    auto ve = value_exponent(n);
    if (!ve) return {0.0, 0.0};
    return unit_root(static_cast<long long>(ve->first),
                     static_cast<long long>(ve->second));
  }

  bool is_principal() const {
    return std::all_of(exps_.begin(), exps_.end(),
                       [](u64 k) { return k == 0; });
  }

  u64 conductor() const { return conductor_; }
  bool is_primitive() const { return conductor_ == modulus(); }

  // True when all values lie in {0, +1, -1}.
  bool is_real() const {
    const auto& factors = group_->factors();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if ((2 * exps_[i]) % factors[i].order != 0) return false;
    }
    return true;
  }

  // kappa = (1 - chi(-1)) / 2: 0 for even characters, 1 for odd.
  int parity_kappa() const { return kappa_; }

  DirichletCharacter conjugate() const {
    const auto& factors = group_->factors();
    std::vector<u64> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = (factors[i].order - exps_[i]) % factors[i].order;
    return DirichletCharacter(group_, std::move(e));
  }

  // Pointwise product of two characters of the same modulus.
  DirichletCharacter times(const DirichletCharacter& other) const {
    if (other.modulus() != modulus())
      throw DomainError("DirichletCharacter: product requires equal moduli");
    const auto& factors = group_->factors();
    std::vector<u64> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] = (exps_[i] + other.exps_[i]) % factors[i].order;
    return DirichletCharacter(group_, std::move(e));
  }

  // The primitive character mod conductor() that induces this one.
  DirichletCharacter primitive_inducing() const {
    u64 d = conductor_;
    auto small = std::make_shared<const UnitGroup>(d);
    const auto& sf = small->factors();
    std::vector<u64> e(sf.size());
    u64 q = modulus();
    for (std::size_t i = 0; i < sf.size(); ++i) {
      // CRT residue mod d that equals this factor's generator on its own
      // prime power and 1 on the others; psi's exponent there is the unit
      // vector for coordinate i, so chi's value at a coprime lift pins it.
      u64 m = sf[i].modulus;
      u64 rest = d / m;  // coprime to m
      u64 a;
      if (rest == 1) {
        a = sf[i].generator % d;
      } else {
        u64 term_g = mul_mod(mul_mod(sf[i].generator % m, rest, d),
                             inv_mod(rest % m, m), d);
        u64 term_1 = mul_mod(m, inv_mod(m % rest, rest), d);
        a = (term_g + term_1) % d;
      }
      while (std::gcd(a, q) != 1) a += d;
      auto ve = value_exponent(static_cast<long long>(a));
      if (!ve) throw Error("primitive_inducing: lift not coprime");
      // psi(g) = exp(2 pi i k / order): k = num * order / L must be exact.
      u64 num = ve->first;
      if ((num * sf[i].order) % L_ != 0)
        throw Error("primitive_inducing: value is not an order-th root");
      e[i] = (num * sf[i].order / L_) % sf[i].order;
    }
    return DirichletCharacter(small, std::move(e));
  }

 private:
  void build_value_table() {
    u64 q = modulus();
    L_ = group_->exponent();
    value_num_.assign(q, -1);
    const auto& factors = group_->factors();
    for (u64 n = 0; n < q; ++n) {
      auto dl = group_->discrete_log(n);
      if (!dl) continue;
      u64 num = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        num = (num + exps_[i] * (*dl)[i] % L_ * (L_ / factors[i].order)) % L_;
      }
      value_num_[n] = static_cast<long long>(num);
    }
  }

  void compute_parity() {
    u64 q = modulus();
    if (q <= 2) {
      kappa_ = 0;
      return;
    }
    long long num = value_num_[q - 1];
    if (num == 0) {
      kappa_ = 0;
    } else if (2 * static_cast<u64>(num) == L_) {
      kappa_ = 1;
    } else {
      throw Error("DirichletCharacter: chi(-1) is not +-1");
    }
  }

  void compute_conductor() {
    u64 q = modulus();
    for (u64 d : divisors_ascending(q)) {
      bool induced = true;
      // chi has period d iff chi(a) = 1 for every a = 1 (mod d), gcd(a,q)=1.
      for (u64 a = 1 + d; a <= q && induced; a += d) {
        if (value_num_[a % q] > 0) induced = false;
      }
      if (induced) {
        conductor_ = d;
        return;
      }
    }
    conductor_ = q;  // unreachable: d = q always satisfies the test
  }

  std::shared_ptr<const UnitGroup> group_;
  std::vector<u64> exps_;
  std::vector<long long> value_num_;  // numerator over L_, -1 for non-units
  u64 L_ = 1;
  u64 conductor_ = 1;
  int kappa_ = 0;
};

// All phi(q) characters mod q in mixed-radix index order (principal first).
inline std::vector<DirichletCharacter> enumerate_characters(u64 q) {
  auto group = std::make_shared<const UnitGroup>(q);
  const auto& factors = group->factors();
  std::vector<DirichletCharacter> out;
  out.reserve(group->phi());
  std::vector<u64> exps(factors.size(), 0);
  for (;;) {
    out.emplace_back(group, exps);
    std::size_t i = 0;
    for (; i < factors.size(); ++i) {
      if (++exps[i] < factors[i].order) break;
      exps[i] = 0;
    }
    if (i == factors.size()) break;
  }
  return out;
}

// The character mod q with the given mixed-radix index.
inline DirichletCharacter character_from_index(u64 q, u64 index) {
  auto group = std::make_shared<const UnitGroup>(q);
  const auto& factors = group->factors();
  std::vector<u64> exps(factors.size());
  u64 rem = index;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    exps[i] = rem % factors[i].order;
    rem /= factors[i].order;
  }
  if (rem != 0)
    throw DomainError("character_from_index: index must be < phi(q)");
  return DirichletCharacter(group, std::move(exps));
}

// Conductor of a character (free-function form of the cached field).
inline u64 conductor(const DirichletCharacter& chi) { return chi.conductor(); }

inline int parity_kappa(const DirichletCharacter& chi) {
  return chi.parity_kappa();
}

// Twisted Gauss sum G(n, chi) = sum_{a=1}^{q} chi(a) e(a n / q).
inline Complex twisted_gauss_sum(long long n, const DirichletCharacter& chi) {
  u64 q = chi.modulus();
  long long nr = n % static_cast<long long>(q);
  if (nr < 0) nr += static_cast<long long>(q);
  CompensatedComplexSum acc;
  for (u64 a = 1; a <= q; ++a) {
    auto ve = chi.value_exponent(static_cast<long long>(a));
    if (!ve) continue;
    // chi(a) * e(a n / q) as a single exact root of unity: the exponents are
    // combined over the common denominator lcm(L, q).
    u64 L = ve->second;
    u64 common = std::lcm(L, q);
    u64 k = ve->first % L * (common / L) % common;
    u64 rot = mul_mod(a % q, static_cast<u64>(nr), q) * (common / q) % common;
    acc.add(unit_root(static_cast<long long>((k + rot) % common),
                      static_cast<long long>(common)));
  }
  return acc.value();
}

// Gauss sum tau(chi) = G(1, chi).
inline Complex gauss_sum(const DirichletCharacter& chi) {
  return twisted_gauss_sum(1, chi);
}

}  // namespace dlf
