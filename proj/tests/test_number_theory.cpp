#include <gtest/gtest.h>

#include <random>

#include "classgraph.hpp"
#include "oracles.hpp"

using namespace classgraph;

TEST(NumberTheory, IsPrimeMatchesSieve) {
  const auto primes = oracle::sieve(200000);
  std::set<std::uint64_t> ps(primes.begin(), primes.end());
  for (std::uint64_t n = 0; n < 200000; ++n) EXPECT_EQ(nt::is_prime(n), ps.count(n) != 0) << n;
}

TEST(NumberTheory, IsPrimeLarge) {
  EXPECT_TRUE(nt::is_prime(1'000'000'007ULL));
  EXPECT_TRUE(nt::is_prime(18446744073709551557ULL));  // largest 64-bit prime
  EXPECT_FALSE(nt::is_prime(3215031751ULL));           // strong pseudoprime to 2,3,5,7
  EXPECT_FALSE(nt::is_prime(3825123056546413051ULL));  // fools the first nine prime bases
  EXPECT_FALSE(nt::is_prime(1'000'000'007ULL * 998'244'353ULL));
}

TEST(NumberTheory, FactorizeRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    std::uint64_t n = rng() >> (rng() % 40);
    if (n < 2) continue;
    std::uint64_t back = 1;
    for (auto [p, e] : nt::factorize(n)) {
      EXPECT_TRUE(oracle::naive_prime(p) || nt::is_prime(p));
      for (unsigned k = 0; k < e; ++k) back *= p;
    }
    EXPECT_EQ(back, n);
  }
  auto f = nt::factorize(1'000'000'007ULL * 998'244'353ULL);
  EXPECT_EQ(f.size(), 2U);
  EXPECT_EQ(f.at(998'244'353ULL), 1U);
}

TEST(NumberTheory, OrdersAndParts) {
  EXPECT_EQ(nt::multiplicative_order(2, 7), 3U);
  EXPECT_EQ(nt::multiplicative_order(3, 7), 6U);
  EXPECT_EQ(nt::multiplicative_order(7, 14), 0U);
  EXPECT_EQ(nt::p_part(360, 2), 8U);
  EXPECT_EQ(nt::valuation(360, 3), 2U);
  EXPECT_EQ(nt::pi_part(360, {2, 5}), 40U);
  EXPECT_EQ(nt::next_unused_prime({2, 3}, 2), 5U);
}

TEST(Dirichlet, Examples) {
  EXPECT_EQ(find_primes_in_ap({2, 3, 1, {}, kDefaultPrimeBound}), (std::vector<Prime>{7, 13}));
  EXPECT_EQ(find_primes_in_ap({1, 5, 1, {11}, kDefaultPrimeBound}), (std::vector<Prime>{31}));
  try {
    find_primes_in_ap({1, 4, 2, {}, kDefaultPrimeBound});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Dirichlet, BoundExhaustedNamesProgression) {
  try {
    find_primes_in_ap({5, 1000, 1, {}, 2000});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundExhausted);
    EXPECT_NE(std::string(e.what()).find("1000"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("2000"), std::string::npos);
  }
}

// property: first `count` qualifying primes from a sieve, deterministic
TEST(Dirichlet, AgreesWithSieve) {
  const auto primes = oracle::sieve(1'000'000);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t m = 1 + rng() % 200;
    std::uint64_t r = rng() % m;
    if (std::gcd(r, m) != 1) continue;
    PrimeSet exclude;
    for (int k = 0; k < 3; ++k) exclude.insert(primes[rng() % 200]);
    const std::size_t count = 1 + rng() % 6;
    std::vector<Prime> expected;
    for (auto p : primes) {
      if (expected.size() == count) break;
      if (p % m == r % m && exclude.count(p) == 0) expected.push_back(p);
    }
    PrimeRequest req{count, m, static_cast<std::int64_t>(r), exclude, 1'000'000};
    const auto got = find_primes_in_ap(req);
    EXPECT_EQ(got, expected) << "m=" << m << " r=" << r;
    EXPECT_EQ(find_primes_in_ap(req), got);
  }
}
