#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace classgraph {

using Prime = std::uint64_t;
using PrimeSet = std::set<Prime>;

namespace nt {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Deterministic Miller-Rabin. The seven bases below (Sinclair) are a proven
/// witness set for every n < 2^64, so no probabilistic acceptance happens.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Primes below `bound`, built once per process on first use.
class PrimeTable {
 public:
  static constexpr std::uint64_t kDefaultBound = 1'000'000;

  static const PrimeTable& instance() {
    static const PrimeTable table(kDefaultBound);
    return table;
  }

  explicit PrimeTable(std::uint64_t bound) : bound_(bound) {
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    }
  }

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  std::uint64_t bound() const { return bound_; }

 private:
  std::uint64_t bound_;
  std::vector<std::uint64_t> primes_;
};

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, g = 1, q = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void split(std::uint64_t n, std::map<Prime, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace detail

/// Exact factorization: trial division by the table primes, then
/// Pollard-Brent for whatever cofactor remains.
inline std::map<Prime, unsigned> factorize(std::uint64_t n) {
  std::map<Prime, unsigned> out;
  if (n <= 1) return out;
  for (std::uint64_t p : PrimeTable::instance().primes()) {
    if (p * p > n) break;
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  // Any cofactor left is either prime or has all its prime factors above the
  // table bound.
  detail::split(n, out);
  return out;
}

inline PrimeSet prime_divisors(std::uint64_t n) {
  PrimeSet out;
  for (const auto& [p, e] : factorize(n)) out.insert(p);
  return out;
}

/// Largest power of p dividing n.
inline std::uint64_t p_part(std::uint64_t n, Prime p) {
  std::uint64_t part = 1;
  while (n % p == 0) {
    n /= p;
    part *= p;
  }
  return part;
}

inline unsigned valuation(std::uint64_t n, Prime p) {
  unsigned v = 0;
  while (n > 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Part of n built from primes in `primes`.
inline std::uint64_t pi_part(std::uint64_t n, const PrimeSet& primes) {
  std::uint64_t part = 1;
  for (Prime p : primes) part *= p_part(n, p);
  return part;
}

/// Multiplicative order of u modulo m; 0 when u is not a unit.
inline std::uint64_t multiplicative_order(std::uint64_t u, std::uint64_t m) {
  if (m == 1) return 1;
  u %= m;
  if (std::gcd(u, m) != 1) return 0;
  // The order divides phi(m); strip prime factors of phi while u^(order/p) = 1.
  std::uint64_t phi = m;
  for (const auto& [p, e] : factorize(m)) phi = phi / p * (p - 1);
  std::uint64_t order = phi;
  for (const auto& [p, e] : factorize(phi)) {
    while (order % p == 0 && pow_mod(u, order / p, m) == 1) order /= p;
  }
  return order;
}

/// Smallest prime >= start that is not in `used`.
inline Prime next_unused_prime(const PrimeSet& used, Prime start) {
  Prime p = std::max<Prime>(start, 2);
  while (!is_prime(p) || used.count(p) != 0) ++p;
  return p;
}

}  // namespace nt
}  // namespace classgraph
