#pragma once

// Small integer utilities shared across the library: overflow-safe 64-bit
// modular arithmetic, deterministic 64-bit primality, integer roots.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <cmath>

#include <gmpxx.h>

namespace bps {

// Resource-limit violations (segment too large, x out of supported range).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// a^k, or nullopt-like sentinel UINT64_MAX on overflow.
inline std::uint64_t checked_pow_u64(std::uint64_t a, unsigned k) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= a;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

// floor(n^(1/k)) for k >= 1, exact.
inline std::uint64_t iroot_u64(std::uint64_t n, unsigned k) {
    if (k == 0) throw std::invalid_argument("iroot_u64: k must be >= 1");
    if (k == 1 || n <= 1) return n;
    if (k >= 64) return 1;
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    // powers can overflow for k=2 near 2^64; compare through checked_pow
    while (r > 1 && checked_pow_u64(r, k) > n) --r;
    while (checked_pow_u64(r + 1, k) <= n) ++r;
    return r;
}

// Deterministic Miller-Rabin for all 64-bit inputs (Sinclair's 7-witness set).
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        a %= n;
        if (a == 0) continue;
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) { std::uint64_t t = a % b; a = b; b = t; }
    return a;
}

} // namespace bps
