#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "bps/arith.hpp"

using namespace bps;

namespace {

// independent oracle: plain Eratosthenes, no shared code path
std::vector<std::uint8_t> oracle_sieve(std::uint64_t n) {
    std::vector<std::uint8_t> is_p(n + 1, 1);
    is_p[0] = 0;
    if (n >= 1) is_p[1] = 0;
    for (std::uint64_t i = 2; i * i <= n; ++i)
        if (is_p[i])
            for (std::uint64_t j = i * i; j <= n; j += i) is_p[j] = 0;
    return is_p;
}

// independent primality oracle with a different witness set
bool oracle_mr(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { comp = false; break; }
        }
        if (comp) return false;
    }
    return true;
}

} // namespace

TEST_CASE("sieve_segment small ranges", "[arith]") {
    ArithTables t = sieve_segment(2, 12);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n < 12; ++n)
        if (t.is_prime(n)) primes.push_back(n);
    CHECK(primes == std::vector<std::uint64_t>{2, 3, 5, 7, 11});

    ArithTables t2 = sieve_segment(100, 120);
    primes.clear();
    for (std::uint64_t n = 100; n < 120; ++n)
        if (t2.is_prime(n)) primes.push_back(n);
    CHECK(primes == std::vector<std::uint64_t>{101, 103, 107, 109, 113});
}

TEST_CASE("sieve_segment preconditions", "[arith]") {
    CHECK_THROWS_AS(sieve_segment(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve_segment(10, 10), std::invalid_argument);
    CHECK_THROWS_AS(sieve_segment(2, 2 + (std::uint64_t(1) << 23)), resource_error);
}

TEST_CASE("pi(1e6) against an independent sieve", "[arith]") {
    CHECK(prime_count(1'000'000) == 78498);
    auto oracle = oracle_sieve(100'000);
    std::uint64_t oracle_pi = 0;
    for (std::uint64_t n = 0; n <= 100'000; ++n) oracle_pi += oracle[n];
    CHECK(prime_count(100'000) == oracle_pi);
    // exact prime-set equality on [2, 1e5)
    std::vector<std::uint64_t> ours;
    for_each_prime(2, 100'000, [&](std::uint64_t p) { ours.push_back(p); });
    std::vector<std::uint64_t> ref;
    for (std::uint64_t n = 2; n < 100'000; ++n)
        if (oracle[n]) ref.push_back(n);
    CHECK(ours == ref);
}

TEST_CASE("is_prime_u64 spec examples", "[arith]") {
    CHECK(is_prime_u64((std::uint64_t(1) << 61) - 1)); // Mersenne prime
    CHECK_FALSE(is_prime_u64(1));
    CHECK(is_prime_u64(1'000'000'000'000'000'009ull)); // cross-checked oracle value
    CHECK_FALSE(is_prime_u64(0));
    CHECK(is_prime_u64(2));
}

TEST_CASE("two-path primality equality on random segments", "[arith]") {
    std::mt19937_64 rng(31337);
    for (int rep = 0; rep < 3; ++rep) {
        const std::uint64_t lo = 2 + rng() % 1'000'000'000'000ull;
        const std::uint64_t hi = lo + 100'000;
        std::vector<std::uint64_t> sieved;
        for_each_prime(lo, hi, [&](std::uint64_t p) { sieved.push_back(p); });
        std::vector<std::uint64_t> mr;
        for (std::uint64_t n = lo; n < hi; ++n)
            if (is_prime_u64(n)) mr.push_back(n);
        REQUIRE(sieved == mr);
    }
    // and against the independent witness set
    for (int rep = 0; rep < 20'000; ++rep) {
        std::uint64_t n = rng();
        REQUIRE(is_prime_u64(n) == oracle_mr(n));
    }
}

TEST_CASE("von Mangoldt values", "[arith]") {
    CHECK(std::abs(static_cast<double>(von_mangoldt_u64(8) - logl(2.0L))) < 1e-15);
    CHECK(von_mangoldt_u64(12) == 0.0L);
    CHECK(std::abs(static_cast<double>(von_mangoldt_u64(121) - logl(11.0L))) < 1e-15);
    CHECK(von_mangoldt_u64(1) == 0.0L);
    CHECK(prime_power_u64(64).p == 2);
    CHECK(prime_power_u64(64).k == 6);
    CHECK(prime_power_u64(36).p == 0);
    CHECK(prime_power_u64(97).k == 1);
}

TEST_CASE("structural Lambda matches the scalar path", "[arith]") {
    ArithTables t = sieve_segment(2, 5000);
    for (std::uint64_t n = 2; n < 5000; ++n) {
        auto a = t.prime_power(n);
        auto b = prime_power_u64(n);
        REQUIRE(a.p == b.p);
        if (a.p != 0) REQUIRE(a.k == b.k);
    }
}

TEST_CASE("Chebyshev psi sanity", "[arith]") {
    const long double psi6 = chebyshev_psi(1'000'000);
    CHECK(std::abs(static_cast<double>(psi6 / 1.0e6L - 1.0L)) < 0.01);
    // psi(1e4) against a direct scalar sum
    long double direct = 0.0L;
    for (std::uint64_t n = 2; n <= 10'000; ++n) direct += von_mangoldt_u64(n);
    CHECK(std::abs(static_cast<double>(chebyshev_psi(10'000) - direct)) < 1e-9);
}

TEST_CASE("divisor-sum identities", "[arith]") {
    // sum_{d|n} Lambda(d) = log n ; sum_{d|n} mu(d) = [n=1]
    ArithTables t = sieve_segment(2, 10'001);
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
        long double lam_sum = 0.0L;
        long long mu_sum = 1; // d = 1 term: Lambda 0, mu 1
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d != 0) continue;
            lam_sum += t.von_mangoldt(d);
            mu_sum += t.mu(d);
            if (d != n / d) {
                lam_sum += t.von_mangoldt(n / d);
                mu_sum += t.mu(n / d);
            }
        }
        if (n >= 2) {
            lam_sum += t.von_mangoldt(n);
            mu_sum += t.mu(n);
        }
        REQUIRE(std::abs(static_cast<double>(lam_sum - logl(static_cast<long double>(n)))) < 1e-9);
        REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("mu and Lambda consistency", "[arith]") {
    ArithTables t = sieve_segment(2, 100'000);
    for (std::uint64_t n = 2; n < 100'000; ++n) {
        if (t.prime_power(n).p != 0) {
            const int m = t.mu(n);
            REQUIRE((m == -1 || m == 0));
            REQUIRE((t.prime_power(n).k == 1 ? m == -1 : m == 0));
        }
    }
}

TEST_CASE("prime powers enumeration", "[arith]") {
    std::vector<std::uint64_t> pps;
    for_each_prime_power(2, 100, [&](std::uint64_t n, std::uint64_t p, unsigned k) {
        pps.push_back(n);
        REQUIRE(checked_pow_u64(p, k) == n);
        REQUIRE(is_prime_u64(p));
    });
    std::set<std::uint64_t> got(pps.begin(), pps.end());
    std::set<std::uint64_t> expect;
    for (std::uint64_t n = 2; n < 100; ++n)
        if (prime_power_u64(n).p != 0) expect.insert(n);
    CHECK(got == expect);
    CHECK(got.size() == pps.size());
}
