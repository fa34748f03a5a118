#pragma once

// Prime-counting along Beatty/PS intersections, with two independent
// counting routes (enumerate the sparse PS sequence and primality-test,
// or sieve all primes and filter by membership), predicted main terms,
// and the exact seven-sum decomposition audit.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bps/arith.hpp"
#include "bps/parallel.hpp"
#include "bps/sequences.hpp"

namespace bps {

struct CountQuery {
    std::vector<BeattySpec> beatty;
    std::optional<PSSpec> ps;
    std::uint64_t x = 10;
};

enum class CountMethod { enumerate_ps, sieve_filter };

inline const char* method_name(CountMethod m) {
    return m == CountMethod::enumerate_ps ? "enumerate-ps" : "sieve-filter";
}

struct CountReport {
    std::uint64_t observed = 0;
    double predicted = 0.0;
    double predicted_li = 0.0;
    double relative_error = 0.0;
    std::int64_t runtime_ms = 0;
    CountMethod method = CountMethod::sieve_filter;
};

// bare main term: x^gamma / (alpha_1 ... alpha_xi log x), or x/(prod log x)
// without a PS factor; pi(x) ~ x/log x when the query is empty
inline double main_term_prediction(const CountQuery& q) {
    double denom = std::log(static_cast<double>(q.x));
    for (const auto& b : q.beatty) denom *= b.alpha().to_double();
    const double top = q.ps ? std::pow(static_cast<double>(q.x), q.ps->gamma_value())
                            : static_cast<double>(q.x);
    return top / denom;
}

// logarithmic-integral refinement: int_2^x gamma t^(gamma-1)/log t dt scaled
// by 1/(alpha_1...alpha_xi); converges faster at desk scale
inline double li_prediction(const CountQuery& q) {
    const double g = q.ps ? q.ps->gamma_value() : 1.0;
    const double lo = std::log(2.0), hi = std::log(static_cast<double>(q.x));
    // substitute t = e^u: integrand g e^{g u} / u
    const int panels = 40'000;
    auto f = [g](double u) { return g * std::exp(g * u) / u; };
    double acc = f(lo) + f(hi);
    const double hstep = (hi - lo) / panels;
    for (int i = 1; i < panels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * hstep);
    double v = acc * hstep / 3.0;
    for (const auto& b : q.beatty) v /= b.alpha().to_double();
    return v;
}

namespace detail {

inline void fill_errors(CountReport* rep, const CountQuery& q) {
    rep->predicted = main_term_prediction(q);
    rep->predicted_li = li_prediction(q);
    rep->relative_error = rep->predicted > 0.0
        ? std::abs(static_cast<double>(rep->observed) - rep->predicted) / rep->predicted
        : 0.0;
}

inline std::uint64_t count_enumerate_ps(const CountQuery& q, int threads) {
    const PSSpec& ps = *q.ps;
    const std::uint64_t nmax = ps.max_index(q.x);
    std::uint64_t total = 0;
    parallel_chunks(
        1, nmax + 1, std::uint64_t(1) << 16, thread_count(threads),
        [&](std::uint64_t nlo, std::uint64_t nhi) {
            PSSpec local_ps = ps; // per-worker evaluator workspace
            std::vector<BeattySpec> local_beatty(q.beatty.begin(), q.beatty.end());
            std::uint64_t count = 0;
            for (std::uint64_t n = nlo; n < nhi; ++n) {
                const std::uint64_t m = local_ps.value_at(n);
                if (!is_prime_u64(m)) continue;
                bool all = true;
                for (const auto& b : local_beatty)
                    if (b.characteristic(m) != 1) { all = false; break; }
                if (all) ++count;
            }
            return count;
        },
        [&total](std::uint64_t&& part) { total += part; });
    return total;
}

inline std::uint64_t count_sieve_filter(const CountQuery& q, int threads) {
    std::uint64_t total = 0;
    parallel_chunks(
        2, q.x + 1, ArithTables::kDefaultSegment, thread_count(threads),
        [&](std::uint64_t lo, std::uint64_t hi) {
            std::optional<PSSpec> local_ps = q.ps;
            std::vector<BeattySpec> local_beatty(q.beatty.begin(), q.beatty.end());
            std::uint64_t count = 0;
            for_each_prime(lo, hi, [&](std::uint64_t p) {
                if (local_ps && local_ps->characteristic(p) != 1) return;
                for (const auto& b : local_beatty)
                    if (b.characteristic(p) != 1) return;
                ++count;
            });
            return count;
        },
        [&total](std::uint64_t&& part) { total += part; });
    return total;
}

} // namespace detail

inline CountReport count_intersection_primes(const CountQuery& q, CountMethod method,
                                             int threads = 0) {
    if (q.x < 2) throw std::invalid_argument("count_intersection_primes: x must be >= 2");
    if (q.x >= (std::uint64_t(1) << 63)) throw resource_error("count_intersection_primes: x beyond 2^63");
    if (method == CountMethod::enumerate_ps && !q.ps)
        throw std::invalid_argument("count_intersection_primes: enumerate-ps needs a PS spec");
    const auto start = std::chrono::steady_clock::now();
    CountReport rep;
    rep.method = method;
    rep.observed = method == CountMethod::enumerate_ps ? detail::count_enumerate_ps(q, threads)
                                                       : detail::count_sieve_filter(q, threads);
    detail::fill_errors(&rep, q);
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

// auto method: enumerating the sparse PS values costs O(x^gamma), sieving
// costs O(x); prefer enumeration whenever a PS spec is present
inline CountReport count_intersection_primes(const CountQuery& q, int threads = 0) {
    return count_intersection_primes(
        q, q.ps ? CountMethod::enumerate_ps : CountMethod::sieve_filter, threads);
}

inline CountReport count_ps_primes(const PSSpec& ps, std::uint64_t x, int threads = 0) {
    CountQuery q;
    q.ps = ps;
    q.x = x;
    return count_intersection_primes(q, CountMethod::enumerate_ps, threads);
}

// ---- seven-sum decomposition audit ------------------------------------------
//
// X1(p) X2(p) Xc(p) expands exactly into S1..S7 once the PS characteristic
// is written with the exact difference Delta(p) = (p+1)^gamma - p^gamma, so
// S1+...+S7 must reproduce the observed count up to accumulation rounding.

struct DecompositionAudit {
    double S[7] = {0, 0, 0, 0, 0, 0, 0};
    double total = 0.0;
    std::uint64_t observed = 0;
    double discrepancy = 0.0;
};

inline DecompositionAudit decomposition_audit(const CountQuery& q, int threads = 0) {
    if (q.beatty.size() != 2 || !q.ps)
        throw std::invalid_argument("decomposition_audit: needs exactly two Beatty specs and a PS spec");
    if (q.x > 10'000'000ull) throw resource_error("decomposition_audit: x capped at 1e7");

    constexpr mpfr_prec_t prec = 192;
    struct Partial {
        long double s[7] = {0, 0, 0, 0, 0, 0, 0};
        std::uint64_t observed = 0;
    };

    const RationalExponent gamma = q.ps->gamma();
    Partial grand;
    parallel_chunks(
        2, q.x + 1, ArithTables::kDefaultSegment, thread_count(threads),
        [&](std::uint64_t lo, std::uint64_t hi) {
            PSSpec ps = *q.ps;
            BeattySpec b1 = q.beatty[0], b2 = q.beatty[1];
            Real w1 = surd_to_real(b1.omega(), prec), w2 = surd_to_real(b2.omega(), prec);
            Real beta1 = surd_to_real(b1.beta(), prec), beta2 = surd_to_real(b2.beta(), prec);
            const long double w1d = mpfr_get_ld(w1.get(), MPFR_RNDN);
            const long double w2d = mpfr_get_ld(w2.get(), MPFR_RNDN);
            Real t(prec), u(prec);
            // psi(-omega (p + shift - beta))
            auto psi_lin = [&](const Real& w, const Real& beta, std::uint64_t p, unsigned shift) {
                mpfr_sub_ui(t.get(), beta.get(), p + shift, MPFR_RNDN); // beta - (p+shift)
                mpfr_mul(t.get(), t.get(), w.get(), MPFR_RNDN);          // -omega(p+shift-beta)
                mpfr_sawtooth(t.get(), prec);
                return mpfr_get_ld(t.get(), MPFR_RNDN);
            };
            auto pow_gamma = [&](std::uint64_t v) {
                detail::mpfr_rational_pow(u.get(), v, gamma);
                return mpfr_get_ld(u.get(), MPFR_RNDN);
            };
            Partial part;
            for_each_prime(lo, hi, [&](std::uint64_t p) {
                const int x1 = b1.characteristic(p);
                const int x2 = b2.characteristic(p);
                const int xc = ps.characteristic(p);
                if (x1 == 1 && x2 == 1 && xc == 1) ++part.observed;

                const long double pg = pow_gamma(p);
                const long double pg1 = pow_gamma(p + 1);
                const long double delta = pg1 - pg;
                const long double e1 = psi_lin(w1, beta1, p, 1) - psi_lin(w1, beta1, p, 0);
                const long double e2 = psi_lin(w2, beta2, p, 1) - psi_lin(w2, beta2, p, 0);
                const long double ec = sawtooth(-pg1) - sawtooth(-pg);
                part.s[0] += w1d * w2d * xc;
                part.s[1] += w1d * delta * e2;
                part.s[2] += w2d * delta * e1;
                part.s[3] += delta * e1 * e2;
                part.s[4] += w1d * ec * e2;
                part.s[5] += w2d * ec * e1;
                part.s[6] += ec * e1 * e2;
            });
            return part;
        },
        [&grand](Partial&& part) {
            for (int i = 0; i < 7; ++i) grand.s[i] += part.s[i];
            grand.observed += part.observed;
        });

    DecompositionAudit audit;
    long double total = 0.0L;
    for (int i = 0; i < 7; ++i) {
        audit.S[i] = static_cast<double>(grand.s[i]);
        total += grand.s[i];
    }
    audit.total = static_cast<double>(total);
    audit.observed = grand.observed;
    audit.discrepancy = std::abs(audit.total - static_cast<double>(audit.observed));
    return audit;
}

// ---- prime-to-Lambda transfer shape (index lemma) ----------------------------

struct TransferReport {
    double lhs = 0.0;       // |sum_{N < p <= N2} g(p)|
    double rhs_shape = 0.0; // max_{N<N1<=N2} |sum Lambda(n) g(n)| / log N + sqrt(N)
    double ratio = 0.0;
};

// g must satisfy |g| <= 1; evaluates both sides of the transfer inequality
// and reports the observed ratio (the implied constant is discovered, not
// assumed).
template <class G>
TransferReport prime_to_lambda_transfer_check(G&& g, std::uint64_t N, std::uint64_t N2 = 0) {
    if (N < 2 || N > 1'000'000ull) throw std::invalid_argument("transfer_check: need 2 <= N <= 1e6");
    if (N2 == 0) N2 = 2 * N;
    if (N2 < N || N2 > 2 * N) throw std::invalid_argument("transfer_check: need N <= N2 <= 2N");

    std::complex<long double> prime_sum{0.0L, 0.0L};
    std::complex<long double> lam_run{0.0L, 0.0L};
    long double max_run = 0.0L;
    if (N2 > N) {
        for (std::uint64_t s = N + 1; s <= N2;) {
            std::uint64_t e = std::min(N2 + 1, s + ArithTables::kDefaultSegment);
            ArithTables tab(s, e);
            for (std::uint64_t n = s; n < e; ++n) {
                const auto pp = tab.prime_power(n);
                if (pp.p == 0) continue;
                const std::complex<long double> gv = g(n);
                lam_run += logl(static_cast<long double>(pp.p)) * gv;
                max_run = std::max(max_run, std::abs(lam_run));
                if (tab.is_prime(n)) prime_sum += gv;
            }
            s = e;
        }
    }
    TransferReport rep;
    rep.lhs = static_cast<double>(std::abs(prime_sum));
    rep.rhs_shape = static_cast<double>(max_run) / std::log(static_cast<double>(N)) +
                    std::sqrt(static_cast<double>(N));
    rep.ratio = rep.lhs / rep.rhs_shape;
    return rep;
}

} // namespace bps
