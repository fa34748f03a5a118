#pragma once

// Continued fractions of quadratic surds, best rational approximation in
// the form alpha = a/q + theta/q^2, empirical irrationality-type profiles
// E(N,t) = min_{n<=N} n^t ||alpha n||, and an exhaustive integer-relation
// probe for linear independence hypotheses.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bps/mpfloat.hpp"
#include "bps/surd.hpp"

namespace bps {

struct ContinuedFraction {
    std::vector<mpz_class> a;                                // partial quotients
    std::vector<mpz_class> p, q;                             // convergents p[k]/q[k]
    std::optional<std::pair<size_t, size_t>> periodic_tail;  // (start, length)
    bool terminated = false;                                 // rational input, full expansion
};

namespace detail {

// one Gauss-map step at a time, exact in the surd field
class CFStepper {
public:
    explicit CFStepper(QuadraticSurd x) : x_(std::move(x)) {}

    std::optional<mpz_class> next() {
        if (done_) return std::nullopt;
        mpz_class a = x_.floor();
        QuadraticSurd frac = x_ - QuadraticSurd(a, 0, 0, 1);
        if (frac.is_zero()) done_ = true;
        else x_ = frac.inverse();
        return a;
    }

    const QuadraticSurd& state() const { return x_; } // complete quotient after the last step
    bool terminated() const { return done_; }

private:
    QuadraticSurd x_;
    bool done_ = false;
};

inline void push_convergent(ContinuedFraction* cf, const mpz_class& a) {
    const size_t k = cf->a.size();
    cf->a.push_back(a);
    if (k == 0) {
        cf->p.push_back(a);
        cf->q.push_back(1);
    } else if (k == 1) {
        cf->p.push_back(a * cf->p[0] + 1);
        cf->q.push_back(a);
    } else {
        cf->p.push_back(a * cf->p[k - 1] + cf->p[k - 2]);
        cf->q.push_back(a * cf->q[k - 1] + cf->q[k - 2]);
    }
}

} // namespace detail

// Exact partial quotients; for quadratic irrationals the repeating tail is
// detected by recurrence of the complete quotient.
inline ContinuedFraction cf_expand(const QuadraticSurd& alpha, size_t max_terms) {
    if (max_terms == 0) throw std::invalid_argument("cf_expand: need at least one term");
    ContinuedFraction cf;
    detail::CFStepper step(alpha);
    std::map<std::string, size_t> seen; // complete quotient -> index of the term it produces
    for (size_t k = 0; k < max_terms; ++k) {
        if (!cf.periodic_tail && !step.terminated()) {
            auto [it, fresh] = seen.emplace(step.state().str(), k);
            if (!fresh) cf.periodic_tail = std::make_pair(it->second, k - it->second);
        }
        auto a = step.next();
        if (!a) break;
        detail::push_convergent(&cf, *a);
        if (step.terminated()) { cf.terminated = true; break; }
    }
    return cf;
}

struct BestApprox {
    mpz_class a, q;       // the convergent a/q with largest q <= Qmax
    QuadraticSurd theta;  // alpha = a/q + theta/q^2, |theta| <= 1
};

inline BestApprox best_approx(const QuadraticSurd& alpha, const mpz_class& Qmax) {
    if (Qmax < 1) throw std::invalid_argument("best_approx: Qmax must be >= 1");
    detail::CFStepper step(alpha);
    ContinuedFraction cf;
    for (;;) {
        auto a = step.next();
        if (!a) break;
        detail::push_convergent(&cf, *a);
        if (cf.q.back() > Qmax) { cf.a.pop_back(); cf.p.pop_back(); cf.q.pop_back(); break; }
        if (step.terminated()) break;
    }
    BestApprox out;
    out.a = cf.p.back();
    out.q = cf.q.back();
    // theta = (alpha - a/q) q^2
    QuadraticSurd aq(out.a, 0, 0, out.q);
    out.theta = (alpha - aq) * QuadraticSurd(out.q * out.q, 0, 0, 1);
    return out;
}

struct TypeEstimate {
    std::uint64_t N = 0;
    std::vector<double> t_grid;
    std::vector<double> E;       // E(N, t) = min_{n<=N} n^t ||alpha n||
    std::vector<double> E_small; // same minimum restricted to n <= sqrt(N)
    std::vector<bool> trending_to_zero;
    bool rational = false;  // ||alpha n|| = 0 at the denominator; flagged, E = 0
    bool truncated = false; // precision budget exhausted (combined check only)
    double analytic_type_bound = 0.0; // sum of component types (combined check only)
};

namespace detail {

inline constexpr mpfr_prec_t kDiophPrec = 256;

// ||q * value - nearest||, value supplied at high precision
inline double dist_to_nearest(mpfr_srcptr value, const mpz_class& q) {
    Real t(kDiophPrec), f(kDiophPrec);
    mpfr_mul_z(t.get(), value, q.get_mpz_t(), MPFR_RNDN);
    mpfr_round(f.get(), t.get());
    mpfr_sub(t.get(), t.get(), f.get(), MPFR_RNDN);
    mpfr_abs(t.get(), t.get(), MPFR_RNDN);
    return mpfr_get_d(t.get(), MPFR_RNDN);
}

// minima of n^t ||alpha n|| over n <= N occur at convergent denominators
inline void fill_type_estimate(TypeEstimate* out, const std::vector<mpz_class>& qs,
                               mpfr_srcptr value, std::uint64_t N,
                               std::span<const double> t_grid) {
    const std::uint64_t small_n = isqrt_u64(N);
    out->t_grid.assign(t_grid.begin(), t_grid.end());
    out->E.assign(t_grid.size(), 1e300);
    out->E_small.assign(t_grid.size(), 1e300);
    for (const mpz_class& q : qs) {
        if (q < 1 || q > static_cast<unsigned long>(std::min<std::uint64_t>(N, ~0ull))) continue;
        const double dist = dist_to_nearest(value, q);
        const double qd = q.get_d();
        for (size_t i = 0; i < t_grid.size(); ++i) {
            const double e = std::pow(qd, t_grid[i]) * dist;
            out->E[i] = std::min(out->E[i], e);
            if (q <= static_cast<unsigned long>(small_n)) out->E_small[i] = std::min(out->E_small[i], e);
        }
    }
    out->trending_to_zero.assign(t_grid.size(), false);
    for (size_t i = 0; i < t_grid.size(); ++i)
        out->trending_to_zero[i] = out->E[i] < 0.5 * out->E_small[i];
}

} // namespace detail

inline TypeEstimate estimate_type(const QuadraticSurd& alpha, std::uint64_t N,
                                  std::span<const double> t_grid) {
    if (N < 1 || N > 10'000'000ull) throw std::invalid_argument("estimate_type: need 1 <= N <= 1e7");
    TypeEstimate out;
    out.N = N;
    if (alpha.is_rational()) {
        out.rational = true;
        out.t_grid.assign(t_grid.begin(), t_grid.end());
        out.E.assign(t_grid.size(), 0.0);
        out.E_small.assign(t_grid.size(), 0.0);
        out.trending_to_zero.assign(t_grid.size(), true);
        return out;
    }
    ContinuedFraction cf = cf_expand(alpha, 256);
    std::vector<mpz_class> qs;
    for (const mpz_class& q : cf.q) {
        if (q > mpz_class(static_cast<unsigned long>(N))) break;
        qs.push_back(q);
    }
    Real value = surd_to_real(alpha, detail::kDiophPrec);
    detail::fill_type_estimate(&out, qs, value.get(), N, t_grid);
    return out;
}

struct IndependenceReport {
    bool found = false;
    std::vector<long> coeffs; // c0, c1, ..., cs with c0 + sum ci omega_i = 0
    std::string message;
};

// Exhaustive search for integer relations c0 + sum c_i omega_i = 0 with all
// |c_i| <= B, decided exactly: the radical parts per squarefree d must each
// vanish, and the rational part must close with an integral c0 in range.
inline IndependenceReport independence_probe(std::span<const QuadraticSurd> omegas, long B) {
    if (omegas.size() > 8) throw std::invalid_argument("independence_probe: at most 8 values");
    if (B < 1 || B > 1000) throw std::invalid_argument("independence_probe: need 1 <= B <= 1000");
    const size_t s = omegas.size();
    double work = 1.0;
    for (size_t i = 0; i < s; ++i) work *= 2.0 * B + 1.0;
    if (work > 1e8) throw resource_error("independence_probe: search space too large");

    std::vector<mpq_class> rat(s);
    std::vector<mpq_class> irr(s);
    std::vector<unsigned long> rad(s);
    for (size_t i = 0; i < s; ++i) {
        rat[i] = omegas[i].rational_part();
        irr[i] = omegas[i].radical_coeff();
        rad[i] = omegas[i].d();
    }

    std::vector<long> c(s, -B);
    IndependenceReport rep;
    for (;;) {
        bool all_zero = true;
        for (long ci : c) if (ci != 0) { all_zero = false; break; }
        if (!all_zero) {
            std::map<unsigned long, mpq_class> radical_sum;
            mpq_class rational_sum = 0;
            for (size_t i = 0; i < s; ++i) {
                rational_sum += c[i] * rat[i];
                if (rad[i] != 0) radical_sum[rad[i]] += c[i] * irr[i];
            }
            bool radicals_vanish = true;
            for (const auto& [d, v] : radical_sum)
                if (sgn(v) != 0) { radicals_vanish = false; break; }
            if (radicals_vanish) {
                mpq_class c0q = -rational_sum;
                if (c0q.get_den() == 1 && abs(c0q.get_num()) <= B) {
                    rep.found = true;
                    rep.coeffs.push_back(static_cast<long>(c0q.get_num().get_si()));
                    rep.coeffs.insert(rep.coeffs.end(), c.begin(), c.end());
                    rep.message = "integer relation found";
                    return rep;
                }
            }
        }
        size_t i = s;
        while (i > 0 && c[i - 1] == B) { c[i - 1] = -B; --i; }
        if (i == 0) break;
        ++c[i - 1];
    }
    rep.message = "no relation up to B (consistent with linear independence; not a proof)";
    return rep;
}

// Type profile of the combination sum h_i omega_i. Falls back to certified
// high-precision continued fractions when the combination leaves every
// quadratic field; partial quotients are accepted only when the bracketing
// interval agrees on the floor, otherwise the expansion truncates.
inline TypeEstimate combined_type_check(std::span<const QuadraticSurd> omegas,
                                        std::span<const unsigned> h, std::uint64_t N,
                                        std::span<const double> t_grid) {
    if (omegas.size() != h.size()) throw std::invalid_argument("combined_type_check: size mismatch");
    if (N < 1 || N > 10'000'000ull) throw std::invalid_argument("combined_type_check: need 1 <= N <= 1e7");

    double bound = 0.0;
    for (size_t i = 0; i < omegas.size(); ++i)
        if (h[i] != 0 && !omegas[i].is_rational()) bound += 1.0; // quadratic irrationals have type 1

    // exact path when everything stays in one field
    bool exact_ok = true;
    QuadraticSurd combo;
    try {
        for (size_t i = 0; i < omegas.size(); ++i)
            combo = combo + QuadraticSurd(static_cast<long>(h[i])) * omegas[i];
    } catch (const std::invalid_argument&) {
        exact_ok = false;
    }
    if (exact_ok) {
        TypeEstimate out = estimate_type(combo, N, t_grid);
        out.analytic_type_bound = bound;
        return out;
    }

    // interval-certified continued fraction at 256 bits
    TypeEstimate out;
    out.N = N;
    out.analytic_type_bound = bound;
    Real lo(detail::kDiophPrec), hi(detail::kDiophPrec), t(detail::kDiophPrec);
    mpfr_set_zero(lo.get(), 1);
    mpfr_set_zero(hi.get(), 1);
    for (size_t i = 0; i < omegas.size(); ++i) {
        set_from_surd(t.get(), omegas[i], MPFR_RNDD);
        mpfr_mul_ui(t.get(), t.get(), h[i], MPFR_RNDD);
        mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
        set_from_surd(t.get(), omegas[i], MPFR_RNDU);
        mpfr_mul_ui(t.get(), t.get(), h[i], MPFR_RNDU);
        mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
    Real mid(detail::kDiophPrec);
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);

    ContinuedFraction cf;
    Real flo(detail::kDiophPrec), fhi(detail::kDiophPrec);
    for (size_t k = 0; k < 256; ++k) {
        mpfr_floor(flo.get(), lo.get());
        mpfr_floor(fhi.get(), hi.get());
        if (!mpfr_equal_p(flo.get(), fhi.get())) { out.truncated = true; break; }
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), flo.get(), MPFR_RNDD);
        detail::push_convergent(&cf, a);
        if (cf.q.back() > mpz_class(static_cast<unsigned long>(N))) break;
        // x -> 1/(x - a), interval endpoints swap
        mpfr_sub_z(lo.get(), lo.get(), a.get_mpz_t(), MPFR_RNDD);
        mpfr_sub_z(hi.get(), hi.get(), a.get_mpz_t(), MPFR_RNDU);
        if (mpfr_zero_p(lo.get()) || mpfr_sgn(lo.get()) < 0) { out.truncated = true; break; }
        mpfr_ui_div(t.get(), 1, hi.get(), MPFR_RNDD);
        mpfr_ui_div(hi.get(), 1, lo.get(), MPFR_RNDU);
        mpfr_set(lo.get(), t.get(), MPFR_RNDD);
    }
    std::vector<mpz_class> qs;
    for (const mpz_class& q : cf.q) {
        if (q > mpz_class(static_cast<unsigned long>(N))) break;
        qs.push_back(q);
    }
    detail::fill_type_estimate(&out, qs, mid.get(), N, t_grid);
    return out;
}

} // namespace bps
