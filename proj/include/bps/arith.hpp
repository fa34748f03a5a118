#pragma once

// Segmented sieve and multiplicative-function tables: primality, von
// Mangoldt Lambda (stored structurally as prime-power base and exponent),
// and Mobius mu over 64-bit ranges.

#include <cmath>
#include <cstdint>
#include <vector>

#include "bps/integer.hpp"

namespace bps {

struct PrimePower {
    std::uint64_t p = 0; // base prime, 0 when n is not a prime power
    unsigned k = 0;
};

// n = p^k for prime p, or {0,0}. Exact via integer k-th roots.
inline PrimePower prime_power_u64(std::uint64_t n) {
    if (n < 2) return {};
    // strip n to its primitive root: largest k with n = r^k
    unsigned k = 1;
    std::uint64_t r = n;
    for (unsigned j = 2; j <= 63; ++j) {
        std::uint64_t c = iroot_u64(n, j);
        if (c < 2) break;
        if (checked_pow_u64(c, j) == n) { r = c; k = j; }
    }
    if (!is_prime_u64(r)) return {};
    return {r, k};
}

inline long double von_mangoldt_u64(std::uint64_t n) {
    PrimePower pp = prime_power_u64(n);
    return pp.p == 0 ? 0.0L : logl(static_cast<long double>(pp.p));
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    std::vector<std::uint8_t> composite(n + 1, 0);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
    }
    return primes;
}

// Exact tables over [lo, hi). Immutable after construction.
class ArithTables {
public:
    static constexpr std::uint64_t kDefaultSegment = std::uint64_t(1) << 22;

    ArithTables(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) { build(); }

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }

    bool is_prime(std::uint64_t n) const { return is_prime_[idx(n)]; }
    int mu(std::uint64_t n) const { return mu_[idx(n)]; }
    PrimePower prime_power(std::uint64_t n) const {
        size_t i = idx(n);
        return {pp_base_[i], pp_exp_[i]};
    }
    long double von_mangoldt(std::uint64_t n) const {
        std::uint64_t p = pp_base_[idx(n)];
        return p == 0 ? 0.0L : logl(static_cast<long double>(p));
    }

private:
    size_t idx(std::uint64_t n) const {
        if (n < lo_ || n >= hi_) throw std::out_of_range("ArithTables: n outside [lo, hi)");
        return static_cast<size_t>(n - lo_);
    }

    void build() {
        const size_t n = static_cast<size_t>(hi_ - lo_);
        is_prime_.assign(n, 0);
        mu_.assign(n, 1);
        pp_base_.assign(n, 0);
        pp_exp_.assign(n, 0);

        std::vector<std::uint64_t> rest(n);
        std::vector<std::uint8_t> squareful(n, 0), multi(n, 0);
        for (size_t i = 0; i < n; ++i) rest[i] = (lo_ + i < 2) ? 1 : lo_ + i;

        const std::uint64_t root = isqrt_u64(hi_ - 1);
        for (std::uint64_t p : primes_up_to(root)) {
            std::uint64_t start = ((lo_ + p - 1) / p) * p;
            for (std::uint64_t v = start; v < hi_; v += p) {
                size_t i = static_cast<size_t>(v - lo_);
                unsigned e = 0;
                while (rest[i] % p == 0) { rest[i] /= p; ++e; }
                if (e >= 2) squareful[i] = 1;
                mu_[i] = (e % 2 == 0) ? mu_[i] : static_cast<std::int8_t>(-mu_[i]);
                if (pp_base_[i] == 0 && !multi[i]) {
                    pp_base_[i] = p;
                    pp_exp_[i] = static_cast<std::uint8_t>(e);
                } else {
                    multi[i] = 1;
                }
            }
        }
        for (size_t i = 0; i < n; ++i) {
            const std::uint64_t v = lo_ + i;
            if (rest[i] > 1) { // one leftover prime factor > sqrt(hi)
                mu_[i] = static_cast<std::int8_t>(-mu_[i]);
                if (pp_base_[i] == 0 && !multi[i]) {
                    pp_base_[i] = rest[i];
                    pp_exp_[i] = 1;
                } else {
                    multi[i] = 1;
                }
            }
            if (squareful[i]) mu_[i] = 0;
            if (multi[i] || v < 2) { pp_base_[i] = 0; pp_exp_[i] = 0; }
            is_prime_[i] = (v >= 2 && !multi[i] && pp_base_[i] == v) ? 1 : 0;
            if (v == 1) mu_[i] = 1;
            if (v == 0) mu_[i] = 0;
        }
    }

    std::uint64_t lo_, hi_;
    std::vector<std::uint8_t> is_prime_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> pp_base_;
    std::vector<std::uint8_t> pp_exp_;
};

inline ArithTables sieve_segment(std::uint64_t lo, std::uint64_t hi,
                                 std::uint64_t max_segment = ArithTables::kDefaultSegment) {
    if (lo < 2 || lo >= hi) throw std::invalid_argument("sieve_segment: need 2 <= lo < hi");
    if (hi > (std::uint64_t(1) << 63)) throw resource_error("sieve_segment: hi beyond 2^63");
    if (hi - lo > max_segment) throw resource_error("sieve_segment: segment larger than configured size");
    return ArithTables(lo, hi);
}

namespace detail {

// Fast prime-only segmented iteration over [lo, hi); fn(uint64_t prime).
template <class Fn>
void for_each_prime_impl(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    if (hi <= 2 || lo >= hi) return;
    if (lo < 2) lo = 2;
    const std::uint64_t segment = ArithTables::kDefaultSegment;
    std::vector<std::uint64_t> base = primes_up_to(isqrt_u64(hi - 1));
    std::vector<std::uint8_t> mark;
    for (std::uint64_t s = lo; s < hi; ) {
        std::uint64_t e = std::min(hi, s + segment);
        mark.assign(static_cast<size_t>(e - s), 1);
        for (std::uint64_t p : base) {
            std::uint64_t start = std::max(p * p, ((s + p - 1) / p) * p);
            if (start >= e) continue;
            for (std::uint64_t v = start; v < e; v += p) mark[static_cast<size_t>(v - s)] = 0;
        }
        for (std::uint64_t v = s; v < e; ++v) {
            if (v >= 2 && mark[static_cast<size_t>(v - s)]) fn(v);
        }
        s = e;
    }
}

} // namespace detail

// Visit every prime in [lo, hi) in increasing order.
template <class Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    detail::for_each_prime_impl(lo, hi, std::forward<Fn>(fn));
}

// Visit every prime power p^k in [lo, hi): fn(n, p, k). Order: primes first
// (k = 1, increasing), then higher powers in increasing p.
template <class Fn>
void for_each_prime_power(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
    for_each_prime(lo, hi, [&](std::uint64_t p) { fn(p, p, 1u); });
    if (hi < 4) return;
    for_each_prime(2, isqrt_u64(hi - 1) + 1, [&](std::uint64_t p) {
        unsigned __int128 pk = static_cast<unsigned __int128>(p) * p;
        unsigned k = 2;
        while (pk < hi) {
            if (pk >= lo) fn(static_cast<std::uint64_t>(pk), p, k);
            pk *= p;
            ++k;
        }
    });
}

inline std::uint64_t prime_count(std::uint64_t x) {
    std::uint64_t count = 0;
    if (x >= 2) for_each_prime(2, x + 1, [&](std::uint64_t) { ++count; });
    return count;
}

// Chebyshev psi(x) = sum_{n <= x} Lambda(n).
inline long double chebyshev_psi(std::uint64_t x) {
    long double acc = 0.0L;
    if (x >= 2)
        for_each_prime_power(2, x + 1, [&](std::uint64_t, std::uint64_t p, unsigned) {
            acc += logl(static_cast<long double>(p));
        });
    return acc;
}

} // namespace bps
