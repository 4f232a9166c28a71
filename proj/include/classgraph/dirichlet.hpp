#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "classgraph/error.hpp"
#include "classgraph/number_theory.hpp"

namespace classgraph {

/// Distinct primes p with p = residue (mod modulus), none in `exclude`,
/// searched no higher than `bound`.
struct PrimeRequest {
  std::uint64_t count = 1;
  std::uint64_t modulus = 1;
  std::int64_t residue = 0;
  PrimeSet exclude;
  std::uint64_t bound = 1'000'000'000;
};

inline constexpr std::uint64_t kDefaultPrimeBound = 1'000'000'000;

/// Smallest-first scan of the progression. Existence is guaranteed by
/// Dirichlet's theorem, smallness is not, hence the explicit ceiling.
inline std::vector<Prime> find_primes_in_ap(const PrimeRequest& req) {
  if (req.count == 0 || req.modulus == 0) {
    throw Error(ErrorKind::InvalidArgument, "count and modulus must be positive");
  }
  const auto m = static_cast<std::int64_t>(req.modulus);
  const auto r = static_cast<std::uint64_t>(((req.residue % m) + m) % m);
  if (std::gcd(r, req.modulus) != 1) {
    throw Error(ErrorKind::InvalidArgument, "residue " + std::to_string(req.residue) +
                                                " is not coprime to modulus " + std::to_string(req.modulus));
  }
  if (req.bound <= req.modulus) {
    throw Error(ErrorKind::InvalidArgument, "bound must exceed the modulus");
  }

  std::vector<Prime> found;
  for (std::uint64_t candidate = r; candidate <= req.bound; candidate += req.modulus) {
    if (candidate < 2 || req.exclude.count(candidate) != 0) continue;
    if (!nt::is_prime(candidate)) continue;
    found.push_back(candidate);
    if (found.size() == req.count) return found;
    if (req.bound - candidate < req.modulus) break;
  }
  throw Error(ErrorKind::BoundExhausted,
              "found " + std::to_string(found.size()) + " of " + std::to_string(req.count) +
                  " primes congruent to " + std::to_string(r) + " mod " + std::to_string(req.modulus) +
                  " below " + std::to_string(req.bound));
}

}  // namespace classgraph
