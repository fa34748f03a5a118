#pragma once

// Exact arithmetic over quadratic fields Q(sqrt(d)) and exact rational
// powers. Every floor/membership decision downstream is decided here with
// integer arithmetic only; no floating-point rounding can flip a result.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "bps/integer.hpp"

namespace bps {

namespace detail {

// d -> s^2 * d' with d' squarefree; multiplies *outer by s, returns d'.
inline unsigned long reduce_radical(unsigned long d, mpz_class* outer) {
    if (d <= 1) return d;
    unsigned long rest = d;
    unsigned long sqfree = 1;
    for (unsigned long p = 2; p * p <= rest && p <= 1'000'000; p == 2 ? p = 3 : p += 2) {
        if (rest % p != 0) continue;
        unsigned e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        for (unsigned i = 0; i + 1 < e; i += 2) *outer *= p;
        if (e % 2 == 1) sqfree *= p;
    }
    if (rest > 1) {
        std::uint64_t s = isqrt_u64(rest);
        if (s * s == rest) {
            *outer *= static_cast<unsigned long>(s);
        } else if (rest < 1'000'000'000'000ull || is_prime_u64(rest)) {
            // no factor <= 1e6, so below 1e12 (or prime) it is squarefree
            sqfree *= rest;
        } else {
            throw std::invalid_argument("radicand too large to reduce to squarefree form");
        }
    }
    return sqfree;
}

// sign of A + B*sqrt(d); d squarefree, d >= 2 whenever B != 0
inline int sign_of_surd_num(const mpz_class& A, const mpz_class& B, unsigned long d) {
    const int sa = sgn(A), sb = sgn(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    mpz_class lhs = A * A, rhs = B * B * static_cast<unsigned long>(d);
    const int c = cmp(lhs, rhs);
    return sa > 0 ? (c > 0 ? 1 : (c < 0 ? -1 : 0)) : (c > 0 ? -1 : (c < 0 ? 1 : 0));
}

// floor((P + Q*sqrt(d)) / R), R > 0, exact
inline mpz_class floor_surd_num(const mpz_class& P, const mpz_class& Q, unsigned long d, const mpz_class& R) {
    mpz_class k;
    if (sgn(Q) == 0 || d == 0) {
        mpz_fdiv_q(k.get_mpz_t(), P.get_mpz_t(), R.get_mpz_t());
        return k;
    }
    mpz_class S = Q * Q * static_cast<unsigned long>(d);
    mpz_class s = sqrt(S); // floor square root, brackets the numerator within 1
    mpz_class L = sgn(Q) > 0 ? mpz_class(P + s) : mpz_class(P - s - 1);
    mpz_fdiv_q(k.get_mpz_t(), L.get_mpz_t(), R.get_mpz_t());
    // candidate fix-up by exact sign tests: want kR <= P+Q*sqrt(d) < (k+1)R
    while (sign_of_surd_num(P - k * R, Q, d) < 0) --k;
    while (sign_of_surd_num(P - (k + 1) * R, Q, d) >= 0) ++k;
    return k;
}

} // namespace detail

// Exact real of the form (p + q*sqrt(d))/r with r > 0, gcd(p,q,r) = 1 and
// d squarefree; d = 0 encodes rationals (q folded away).
class QuadraticSurd {
public:
    QuadraticSurd() : p_(0), q_(0), r_(1), d_(0) {}
    QuadraticSurd(long v) : p_(v), q_(0), r_(1), d_(0) {} // NOLINT(google-explicit-constructor)

    QuadraticSurd(mpz_class p, mpz_class q, unsigned long d, mpz_class r)
        : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(d) {
        if (sgn(r_) == 0) throw std::invalid_argument("QuadraticSurd: r must be nonzero");
        d_ = detail::reduce_radical(d_, &q_);
        normalize();
    }

    static QuadraticSurd rational(const mpq_class& v) {
        return QuadraticSurd(v.get_num(), 0, 0, v.get_den());
    }

    static QuadraticSurd sqrt_of(const mpq_class& v) {
        if (sgn(v) < 0) throw std::invalid_argument("sqrt of negative rational");
        if (sgn(v) == 0) return QuadraticSurd();
        // sqrt(a/b) = sqrt(a*b)/b
        mpz_class ab = v.get_num() * v.get_den();
        if (!ab.fits_ulong_p()) throw std::invalid_argument("radicand too large");
        mpz_class outer = 1;
        unsigned long d = detail::reduce_radical(ab.get_ui(), &outer);
        if (d <= 1) return QuadraticSurd(outer, 0, 0, v.get_den()); // perfect square
        return QuadraticSurd(0, outer, d, v.get_den());
    }

    const mpz_class& p() const { return p_; }
    const mpz_class& q() const { return q_; }
    const mpz_class& r() const { return r_; }
    unsigned long d() const { return d_; }

    bool is_rational() const { return d_ == 0; }
    bool is_integer() const { return d_ == 0 && r_ == 1; }
    bool is_zero() const { return d_ == 0 && sgn(p_) == 0; }

    mpq_class rational_part() const { mpq_class v(p_, r_); v.canonicalize(); return v; }
    mpq_class radical_coeff() const { mpq_class v(q_, r_); v.canonicalize(); return v; }

    mpq_class as_rational() const {
        if (!is_rational()) throw std::invalid_argument("surd is irrational");
        return rational_part();
    }

    int sign() const { return detail::sign_of_surd_num(p_, q_, d_); }

    friend QuadraticSurd operator-(const QuadraticSurd& a) {
        return QuadraticSurd(-a.p_, -a.q_, a.d_, a.r_);
    }

    friend QuadraticSurd operator+(const QuadraticSurd& a, const QuadraticSurd& b) {
        unsigned long d = common_radical(a, b);
        return QuadraticSurd(a.p_ * b.r_ + b.p_ * a.r_, a.q_ * b.r_ + b.q_ * a.r_, d, a.r_ * b.r_);
    }
    friend QuadraticSurd operator-(const QuadraticSurd& a, const QuadraticSurd& b) { return a + (-b); }

    friend QuadraticSurd operator*(const QuadraticSurd& a, const QuadraticSurd& b) {
        unsigned long d = common_radical(a, b);
        mpz_class p = a.p_ * b.p_ + a.q_ * b.q_ * static_cast<unsigned long>(d);
        mpz_class q = a.p_ * b.q_ + a.q_ * b.p_;
        return QuadraticSurd(std::move(p), std::move(q), d, a.r_ * b.r_);
    }

    QuadraticSurd inverse() const {
        if (is_zero()) throw std::invalid_argument("inverse of zero");
        // r/(p+q*sqrt(d)) = r(p - q*sqrt(d)) / (p^2 - q^2 d)
        mpz_class den = p_ * p_ - q_ * q_ * static_cast<unsigned long>(d_);
        return QuadraticSurd(r_ * p_, -r_ * q_, d_, std::move(den));
    }

    friend QuadraticSurd operator/(const QuadraticSurd& a, const QuadraticSurd& b) { return a * b.inverse(); }

    // exact trichotomy; throws on incompatible radicands
    static int compare(const QuadraticSurd& a, const QuadraticSurd& b) {
        unsigned long d = common_radical(a, b);
        mpz_class A = a.p_ * b.r_ - b.p_ * a.r_;
        mpz_class B = a.q_ * b.r_ - b.q_ * a.r_;
        return detail::sign_of_surd_num(A, B, d);
    }

    friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
        return a.d_ == b.d_ && a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_;
    }
    friend bool operator<(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) < 0; }
    friend bool operator>(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) > 0; }
    friend bool operator<=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const QuadraticSurd& a, const QuadraticSurd& b) { return compare(a, b) >= 0; }

    mpz_class floor() const { return detail::floor_surd_num(p_, q_, d_, r_); }

    double to_double() const {
        long double v = static_cast<long double>(mpz_get_d(p_.get_mpz_t()));
        if (d_ != 0) v += static_cast<long double>(mpz_get_d(q_.get_mpz_t())) * sqrtl(static_cast<long double>(d_));
        return static_cast<double>(v / static_cast<long double>(mpz_get_d(r_.get_mpz_t())));
    }

    std::string str() const {
        if (is_rational()) {
            std::string s = p_.get_str();
            if (r_ != 1) s += "/" + r_.get_str();
            return s;
        }
        std::string s = "(" + p_.get_str() + (sgn(q_) < 0 ? "" : "+") + q_.get_str() +
                        "*sqrt(" + std::to_string(d_) + "))";
        if (r_ != 1) s += "/" + r_.get_str();
        return s;
    }

private:
    static unsigned long common_radical(const QuadraticSurd& a, const QuadraticSurd& b) {
        if (a.d_ == b.d_) return a.d_;
        if (a.d_ == 0) return b.d_;
        if (b.d_ == 0) return a.d_;
        throw std::invalid_argument("incompatible radicands sqrt(" + std::to_string(a.d_) +
                                    ") vs sqrt(" + std::to_string(b.d_) + ")");
    }

    void normalize() {
        if (sgn(r_) < 0) { p_ = -p_; q_ = -q_; r_ = -r_; }
        if (sgn(q_) == 0 || d_ == 0) { q_ = 0; d_ = 0; }
        if (d_ == 1) { p_ += q_; q_ = 0; d_ = 0; }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
        if (g > 1) { p_ /= g; q_ /= g; r_ /= g; }
    }

    mpz_class p_, q_, r_;
    unsigned long d_;
};

// floor(s*n + t), all decisions by exact integer comparison.
inline mpz_class floor_surd_linear(const QuadraticSurd& s, const mpz_class& n, const QuadraticSurd& t) {
    if (!t.is_rational() && !s.is_rational() && s.d() != t.d())
        throw std::invalid_argument("floor_surd_linear: incompatible radicands");
    unsigned long d = s.is_rational() ? t.d() : s.d();
    // common denominator R = r_s * r_t
    mpz_class P = s.p() * n * t.r() + t.p() * s.r();
    mpz_class Q = s.q() * n * t.r() + t.q() * s.r();
    mpz_class R = s.r() * t.r();
    return detail::floor_surd_num(P, Q, d, R);
}

// Reduced positive rational exponent num/den.
struct RationalExponent {
    unsigned long num = 1;
    unsigned long den = 1;

    RationalExponent() = default;
    RationalExponent(unsigned long n, unsigned long d) : num(n), den(d) {
        if (n == 0 || d == 0) throw std::invalid_argument("RationalExponent: zero component");
        unsigned long g = gcd_u64(n, d);
        num /= g;
        den /= g;
    }

    RationalExponent reciprocal() const { return RationalExponent(den, num); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
};

struct RootResult {
    mpz_class value;
    bool exact = false; // m^(num/den) is an integer
};

// floor(m^(num/den)) via integer den-th root, then an exact bracketing
// verification value^den <= m^num < (value+1)^den.
inline RootResult floor_rational_power_checked(const mpz_class& m, RationalExponent e) {
    if (sgn(m) < 0) throw std::invalid_argument("floor_rational_power: m must be >= 0");
    RootResult res;
    if (sgn(m) == 0) { res.value = 0; res.exact = true; return res; }
    mpz_class v;
    mpz_pow_ui(v.get_mpz_t(), m.get_mpz_t(), e.num);
    mpz_class k;
    mpz_root(k.get_mpz_t(), v.get_mpz_t(), e.den);
    mpz_class kp;
    mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), e.den);
    while (kp > v) { --k; mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), e.den); }
    res.exact = (kp == v);
    mpz_class next = k + 1;
    mpz_pow_ui(kp.get_mpz_t(), next.get_mpz_t(), e.den);
    while (kp <= v) {
        res.exact = (kp == v);
        k = next;
        ++next;
        mpz_pow_ui(kp.get_mpz_t(), next.get_mpz_t(), e.den);
    }
    res.value = std::move(k);
    return res;
}

inline mpz_class floor_rational_power(const mpz_class& m, RationalExponent e) {
    return floor_rational_power_checked(m, e).value;
}

inline mpz_class ceil_rational_power(const mpz_class& m, RationalExponent e) {
    RootResult r = floor_rational_power_checked(m, e);
    return r.exact ? r.value : mpz_class(r.value + 1);
}

// Reusable-workspace evaluator of floor(m^(num/den)) for 64-bit m whose
// result also fits in 64 bits. Seeds from long double, then verifies the
// bracket k^den <= m^num < (k+1)^den exactly. One instance per thread.
class RationalPowerEval {
public:
    explicit RationalPowerEval(RationalExponent e) : e_(e) { mpz_inits(v_, kp_, nullptr); }
    ~RationalPowerEval() { mpz_clears(v_, kp_, nullptr); }
    RationalPowerEval(const RationalPowerEval& o) : RationalPowerEval(o.e_) {}
    RationalPowerEval& operator=(const RationalPowerEval&) = delete;

    RationalExponent exponent() const { return e_; }

    std::uint64_t floor_pow(std::uint64_t m, bool* exact = nullptr) const {
        if (m <= 1) { if (exact) *exact = true; return m; }
        auto k = static_cast<std::uint64_t>(
            powl(static_cast<long double>(m), static_cast<long double>(e_.num) / e_.den));
        mpz_set_ui(v_, m);
        mpz_pow_ui(v_, v_, e_.num);
        mpz_set_ui(kp_, k);
        mpz_pow_ui(kp_, kp_, e_.den);
        while (k > 0 && mpz_cmp(kp_, v_) > 0) {
            --k;
            mpz_set_ui(kp_, k);
            mpz_pow_ui(kp_, kp_, e_.den);
        }
        bool ex = (mpz_cmp(kp_, v_) == 0);
        for (;;) {
            mpz_set_ui(kp_, k + 1);
            mpz_pow_ui(kp_, kp_, e_.den);
            int c = mpz_cmp(kp_, v_);
            if (c > 0) break;
            ++k;
            ex = (c == 0);
        }
        if (exact) *exact = ex;
        return k;
    }

    std::uint64_t ceil_pow(std::uint64_t m) const {
        bool ex = false;
        std::uint64_t k = floor_pow(m, &ex);
        return ex ? k : k + 1;
    }

private:
    RationalExponent e_;
    mutable mpz_t v_, kp_;
};

// Reusable-workspace evaluator of floor(s*m + t) for 64-bit m, with s, t in
// one quadratic field. Precomputes a common denominator once. One instance
// per thread.
class LinearFloorEval {
public:
    LinearFloorEval(const QuadraticSurd& s, const QuadraticSurd& t) {
        if (!s.is_rational() && !t.is_rational() && s.d() != t.d())
            throw std::invalid_argument("LinearFloorEval: incompatible radicands");
        d_ = s.is_rational() ? t.d() : s.d();
        sp_ = s.p() * t.r();
        sq_ = s.q() * t.r();
        tp_ = t.p() * s.r();
        tq_ = t.q() * s.r();
        R_ = s.r() * t.r();
        mpz_inits(P_, Q_, S_, root_, A_, k_, kr_, nullptr);
    }
    ~LinearFloorEval() { mpz_clears(P_, Q_, S_, root_, A_, k_, kr_, nullptr); }
    LinearFloorEval(const LinearFloorEval& o)
        : sp_(o.sp_), sq_(o.sq_), tp_(o.tp_), tq_(o.tq_), R_(o.R_), d_(o.d_) {
        mpz_inits(P_, Q_, S_, root_, A_, k_, kr_, nullptr);
    }
    LinearFloorEval& operator=(const LinearFloorEval&) = delete;

    std::int64_t floor_at(std::uint64_t m) const {
        mpz_mul_ui(P_, sp_.get_mpz_t(), m);
        mpz_add(P_, P_, tp_.get_mpz_t());
        mpz_mul_ui(Q_, sq_.get_mpz_t(), m);
        mpz_add(Q_, Q_, tq_.get_mpz_t());
        return floor_num();
    }

private:
    int sign_num_minus(const mpz_t kr) const {
        // sign of (P - kr) + Q*sqrt(d)
        mpz_sub(A_, P_, kr);
        int sa = mpz_sgn(A_), sb = mpz_sgn(Q_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        mpz_mul(A_, A_, A_);
        mpz_mul(S_, Q_, Q_);
        mpz_mul_ui(S_, S_, d_);
        int c = mpz_cmp(A_, S_);
        return sa > 0 ? (c > 0 ? 1 : (c < 0 ? -1 : 0)) : (c > 0 ? -1 : (c < 0 ? 1 : 0));
    }

    std::int64_t floor_num() const {
        if (mpz_sgn(Q_) == 0 || d_ == 0) {
            mpz_fdiv_q(k_, P_, R_.get_mpz_t());
        } else {
            mpz_mul(S_, Q_, Q_);
            mpz_mul_ui(S_, S_, d_);
            mpz_sqrt(root_, S_);
            if (mpz_sgn(Q_) > 0) {
                mpz_add(k_, P_, root_);
            } else {
                mpz_sub(k_, P_, root_);
                mpz_sub_ui(k_, k_, 1);
            }
            mpz_fdiv_q(k_, k_, R_.get_mpz_t());
            for (;;) { // want kR <= P + Q sqrt(d)
                mpz_mul(kr_, k_, R_.get_mpz_t());
                if (sign_num_minus(kr_) >= 0) break;
                mpz_sub_ui(k_, k_, 1);
            }
            for (;;) { // want P + Q sqrt(d) < (k+1)R
                mpz_add_ui(k_, k_, 1);
                mpz_mul(kr_, k_, R_.get_mpz_t());
                if (sign_num_minus(kr_) < 0) { mpz_sub_ui(k_, k_, 1); break; }
            }
        }
        return mpz_get_si(k_);
    }

    mpz_class sp_, sq_, tp_, tq_, R_;
    unsigned long d_ = 0;
    mutable mpz_t P_, Q_, S_, root_, A_, k_, kr_;
};

} // namespace bps
