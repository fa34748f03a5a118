#pragma once

// Sawtooth/Vaaler machinery, direct exponential-sum evaluation, the
// Heath-Brown decomposition of the von Mangoldt function, and empirical
// checkers for the derivative-test and bilinear (Type I/II) envelope
// bounds. Envelope constants are discovered, never assumed.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "bps/arith.hpp"
#include "bps/parallel.hpp"

namespace bps {

inline double sawtooth(double t) { return t - std::floor(t) - 0.5; }
inline long double sawtooth(long double t) { return t - floorl(t) - 0.5L; }

inline std::complex<long double> unit_phase(long double t) {
    // e(t) = exp(2 pi i t)
    long double s, c;
    sincosl(2.0L * std::numbers::pi_v<long double> * t, &s, &c);
    return {c, s};
}

// ---- Vaaler approximation --------------------------------------------------
//
// psi(t) ~ sum_{0<|h|<=H} a_h e(th) with the error majorized pointwise by the
// Fejer kernel sum_{|h|<=H} b_h e(th):
//   a_h = -Phi(h/(H+1)) / (2 pi i h),  Phi(t) = pi t (1-t) cot(pi t) + t
//   b_h = (1 - |h|/(H+1)) / (2H+2)
// The construction is validated on a grid at build time rather than trusted.
class VaalerApprox {
public:
    explicit VaalerApprox(int H) : H_(H) {
        if (H < 1) throw std::invalid_argument("VaalerApprox: H must be >= 1");
        a_.resize(static_cast<size_t>(H));
        b_.resize(static_cast<size_t>(H) + 1);
        for (int h = 1; h <= H; ++h) {
            const double t = static_cast<double>(h) / (H + 1);
            const double phi = std::numbers::pi * t * (1.0 - t) * (std::cos(std::numbers::pi * t) / std::sin(std::numbers::pi * t)) + t;
            // -phi/(2 pi i h) = i phi/(2 pi h)
            a_[static_cast<size_t>(h - 1)] = {0.0, phi / (2.0 * std::numbers::pi * h)};
        }
        for (int h = 0; h <= H; ++h)
            b_[static_cast<size_t>(h)] = (1.0 - static_cast<double>(h) / (H + 1)) / (2.0 * H + 2.0);
#ifndef NDEBUG
        if (max_violation(512) > 1e-12)
            throw std::logic_error("VaalerApprox: majorant inequality failed grid validation");
#endif
    }

    int H() const { return H_; }

    std::complex<double> a(int h) const {
        if (h == 0 || std::abs(h) > H_) throw std::out_of_range("VaalerApprox::a: need 0 < |h| <= H");
        std::complex<double> v = a_[static_cast<size_t>(std::abs(h) - 1)];
        return h > 0 ? v : std::conj(v);
    }

    double b(int h) const {
        if (std::abs(h) > H_) throw std::out_of_range("VaalerApprox::b: need |h| <= H");
        return b_[static_cast<size_t>(std::abs(h))];
    }

    // sum_{0<|h|<=H} a_h e(th); real by conjugate symmetry
    double approx(double t) const {
        double acc = 0.0;
        for (int h = 1; h <= H_; ++h) {
            const double w = 2.0 * std::numbers::pi * t * h;
            acc += 2.0 * (a_[static_cast<size_t>(h - 1)].real() * std::cos(w) -
                          a_[static_cast<size_t>(h - 1)].imag() * std::sin(w));
        }
        return acc;
    }

    // sum_{|h|<=H} b_h e(th); a nonnegative Fejer-type kernel
    double majorant(double t) const {
        double acc = b_[0];
        for (int h = 1; h <= H_; ++h)
            acc += 2.0 * b_[static_cast<size_t>(h)] * std::cos(2.0 * std::numbers::pi * t * h);
        return acc;
    }

    // max over a uniform grid of |psi(t) - approx(t)| - majorant(t)
    double max_violation(int grid_points) const {
        double worst = -1e300;
        for (int i = 0; i < grid_points; ++i) {
            const double t = static_cast<double>(i) / grid_points;
            worst = std::max(worst, std::abs(sawtooth(t) - approx(t)) - majorant(t));
        }
        return worst;
    }

private:
    int H_;
    std::vector<std::complex<double>> a_; // a_h for h = 1..H; a_{-h} = conj(a_h)
    std::vector<double> b_;               // b_h for h = 0..H; b_{-h} = b_h
};

inline VaalerApprox vaaler_build(int H) { return VaalerApprox(H); }

// ---- direct Lambda-weighted exponential sums -------------------------------

// phase f(n) = h n^gamma + m1 n + m2
struct PhaseSpec {
    long long h = 0;
    double gamma = 0.5;
    long double m1 = 0.0L;
    long double m2 = 0.0L;

    long double eval_mod1(std::uint64_t n) const {
        long double t = m2;
        if (h != 0) t += fmodl(static_cast<long double>(h) * powl(static_cast<long double>(n), gamma), 1.0L);
        if (m1 != 0.0L) t += fmodl(m1 * static_cast<long double>(n), 1.0L);
        return t;
    }
};

// sum_{lo < n <= hi} Lambda(n) e(f(n)), extended-precision accumulation,
// deterministic partial-sum order independent of the thread count
inline std::complex<double> lambda_expsum(const PhaseSpec& phase, std::uint64_t lo, std::uint64_t hi,
                                          int threads = 0) {
    if (hi > 100'000'000ull) throw resource_error("lambda_expsum: direct evaluation capped at 1e8");
    if (hi <= lo) return {0.0, 0.0};
    std::complex<long double> total{0.0L, 0.0L};
    parallel_chunks(
        lo + 1, hi + 1, std::uint64_t(1) << 20, thread_count(threads),
        [&phase](std::uint64_t clo, std::uint64_t chi) {
            std::complex<long double> acc{0.0L, 0.0L};
            for_each_prime_power(clo, chi, [&](std::uint64_t n, std::uint64_t p, unsigned) {
                acc += logl(static_cast<long double>(p)) * unit_phase(phase.eval_mod1(n));
            });
            return acc;
        },
        [&total](std::complex<long double>&& part) { total += part; });
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

// ---- Heath-Brown identity ---------------------------------------------------

struct HBParams {
    double z = 1.0;
    int k = 1;
};

namespace detail {

struct DivisorData {
    std::vector<std::uint64_t> divs; // sorted
    std::vector<int> mu;             // Mobius at each divisor
    std::vector<std::vector<unsigned>> exps; // exponent vectors per divisor

    size_t index_of(std::uint64_t d) const {
        auto it = std::lower_bound(divs.begin(), divs.end(), d);
        return static_cast<size_t>(it - divs.begin());
    }
};

inline DivisorData divisor_data(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> fac;
    std::uint64_t m = n;
    for (std::uint64_t p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0) continue;
        unsigned e = 0;
        while (m % p == 0) { m /= p; ++e; }
        fac.emplace_back(p, e);
    }
    if (m > 1) fac.emplace_back(m, 1);

    DivisorData out;
    out.divs.push_back(1);
    out.exps.push_back(std::vector<unsigned>(fac.size(), 0));
    for (size_t fi = 0; fi < fac.size(); ++fi) {
        const size_t base = out.divs.size();
        std::uint64_t pk = 1;
        for (unsigned e = 1; e <= fac[fi].second; ++e) {
            pk *= fac[fi].first;
            for (size_t i = 0; i < base; ++i) {
                out.divs.push_back(out.divs[i] * pk);
                auto ex = out.exps[i];
                ex[fi] = e;
                out.exps.push_back(std::move(ex));
            }
        }
    }
    std::vector<size_t> order(out.divs.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return out.divs[a] < out.divs[b]; });
    DivisorData sorted;
    sorted.divs.reserve(order.size());
    sorted.exps.reserve(order.size());
    for (size_t i : order) {
        sorted.divs.push_back(out.divs[i]);
        sorted.exps.push_back(out.exps[i]);
    }
    sorted.mu.resize(sorted.divs.size());
    for (size_t i = 0; i < sorted.divs.size(); ++i) {
        int v = 1;
        for (unsigned e : sorted.exps[i]) {
            if (e >= 2) { v = 0; break; }
            if (e == 1) v = -v;
        }
        sorted.mu[i] = v;
    }
    return sorted;
}

// number of ordered j-factorizations of the divisor at index i:
// multiplicative, tau_j(p^e) = C(e+j-1, j-1)
inline long double tau_ordered(const DivisorData& dd, size_t i, int j) {
    if (j == 0) return dd.divs[i] == 1 ? 1.0L : 0.0L;
    long double v = 1.0L;
    for (unsigned e : dd.exps[i]) {
        // C(e+j-1, j-1)
        long double c = 1.0L;
        for (unsigned t = 1; t <= e; ++t)
            c = c * (j - 1 + t) / t;
        v *= c;
    }
    return v;
}

} // namespace detail

// |RHS of the Heath-Brown identity - Lambda(n)|, the right side evaluated by
// exhaustive enumeration over ordered factorizations n_1...n_{2j} = n with
// n_{j+1},...,n_{2j} <= z.
inline double heath_brown_residual(std::uint64_t n, HBParams params) {
    const int k = params.k;
    const double z = params.z;
    if (n < 1 || k < 1 || z < 1.0) throw std::invalid_argument("heath_brown_residual: need n,k >= 1 and z >= 1");
    if (static_cast<double>(n) > 2.0 * std::pow(z, k))
        throw std::invalid_argument("heath_brown_residual: n exceeds validity range 2 z^k");

    const detail::DivisorData dd = detail::divisor_data(n);
    const size_t nd = dd.divs.size();

    // A_j(a) = sum over ordered j-tuples with product a of log(first factor)
    //        = sum_{d|a} log d * tau_{j-1}(a/d)
    // B_j(b) = sum over ordered j-tuples of factors <= z with product b of mu(each)
    auto A = [&](size_t ia, int j) {
        long double acc = 0.0L;
        const std::uint64_t a = dd.divs[ia];
        for (size_t id = 0; id < nd; ++id) {
            const std::uint64_t d = dd.divs[id];
            if (d < 2 || a % d != 0) continue;
            acc += logl(static_cast<long double>(d)) * detail::tau_ordered(dd, dd.index_of(a / d), j - 1);
        }
        return acc;
    };

    std::map<std::pair<size_t, int>, long double> bmemo;
    auto B = [&](auto&& self, size_t ib, int j) -> long double {
        if (j == 0) return dd.divs[ib] == 1 ? 1.0L : 0.0L;
        auto key = std::make_pair(ib, j);
        if (auto it = bmemo.find(key); it != bmemo.end()) return it->second;
        long double acc = 0.0L;
        const std::uint64_t b = dd.divs[ib];
        for (size_t id = 0; id < nd; ++id) {
            const std::uint64_t d = dd.divs[id];
            if (static_cast<double>(d) > z) break;
            if (b % d != 0 || dd.mu[id] == 0) continue;
            acc += dd.mu[id] * self(self, dd.index_of(b / d), j - 1);
        }
        bmemo[key] = acc;
        return acc;
    };

    long double rhs = 0.0L;
    long double binom = 1.0L; // C(k, j)
    for (int j = 1; j <= k; ++j) {
        binom = binom * (k - j + 1) / j;
        long double inner = 0.0L;
        for (size_t ia = 0; ia < nd; ++ia)
            inner += A(ia, j) * B(B, dd.index_of(n / dd.divs[ia]), j);
        rhs += (j % 2 == 1 ? 1.0L : -1.0L) * binom * inner;
    }
    const long double lam = von_mangoldt_u64(n);
    return static_cast<double>(fabsl(rhs - lam));
}

// ---- derivative-test envelope checker ---------------------------------------

struct VdcReport {
    double direct = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    double lambda_j = 0.0;
    int order = 2;
    bool ok = false;
};

// f(n) = coef n^power on (a, 2a]; |f^(order)| must stay within a factor 4 of
// its value at the geometric midpoint a*sqrt(2), the dyadic normalization.
inline VdcReport vdc_bound_check(double coef, double power, std::uint64_t a, int order,
                                 double C = 10.0) {
    if (order != 2 && order != 3) throw std::invalid_argument("vdc_bound_check: order must be 2 or 3");
    if (a < 1) throw std::invalid_argument("vdc_bound_check: a must be >= 1");
    auto deriv_mag = [&](double t) {
        double c = std::abs(coef);
        for (int j = 0; j < order; ++j) c *= std::abs(power - j);
        return c * std::pow(t, power - order);
    };
    const double mid = static_cast<double>(a) * std::sqrt(2.0);
    const double lam = deriv_mag(mid);
    if (!(lam > 0.0)) throw std::invalid_argument("vdc_bound_check: derivative of requested order vanishes");
    const double lo = deriv_mag(static_cast<double>(a));
    const double hi = deriv_mag(2.0 * static_cast<double>(a));
    if (std::max(lo, hi) > 4.0 * lam || std::min(lo, hi) * 4.0 < lam)
        throw std::invalid_argument("vdc_bound_check: derivative not ~constant over the dyadic range");

    std::complex<long double> S{0.0L, 0.0L};
    const long double cL = static_cast<long double>(coef);
    for (std::uint64_t n = a + 1; n <= 2 * a; ++n)
        S += unit_phase(fmodl(cL * powl(static_cast<long double>(n), static_cast<long double>(power)), 1.0L));

    VdcReport rep;
    rep.order = order;
    rep.lambda_j = lam;
    rep.direct = static_cast<double>(std::abs(S));
    rep.envelope = order == 2 ? static_cast<double>(a) * std::sqrt(lam) + 1.0 / std::sqrt(lam)
                              : static_cast<double>(a) * std::pow(lam, 1.0 / 6) + std::pow(lam, -1.0 / 3);
    rep.ratio = rep.direct / rep.envelope;
    rep.ok = rep.ratio <= C;
    return rep;
}

// ---- bilinear Type I / Type II sums -----------------------------------------

enum class SumKind { type_i, type_ii };
enum class CoeffKind { unit, log_weight, mobius };

struct TypeSumReport {
    double direct = 0.0;
    double envelope = 0.0;
    double ratio = 0.0;
    std::uint64_t K = 0, L = 0;
    double x = 0.0;
};

namespace detail {

inline std::vector<std::int8_t> mobius_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::int8_t> out;
    out.reserve(static_cast<size_t>(hi - lo));
    for (std::uint64_t s = lo; s < hi;) {
        std::uint64_t e = std::min(hi, s + ArithTables::kDefaultSegment);
        ArithTables t(s, e);
        for (std::uint64_t v = s; v < e; ++v) out.push_back(static_cast<std::int8_t>(t.mu(v)));
        s = e;
    }
    return out;
}

inline long double coeff_value(CoeffKind kind, std::uint64_t v, const std::vector<std::int8_t>& mu,
                               std::uint64_t base) {
    switch (kind) {
        case CoeffKind::unit: return 1.0L;
        case CoeffKind::log_weight: return logl(static_cast<long double>(v));
        case CoeffKind::mobius: return static_cast<long double>(mu[static_cast<size_t>(v - base)]);
    }
    return 0.0L;
}

} // namespace detail

// Direct value of sum_{k~K} sum_{l~L} a_k b_l e(h (kl)^gamma + m1 kl + m2)
// against the dyadic-range envelope of the corresponding lemma, epsilon
// dropped. Type I needs K <= sqrt(x); Type II needs sqrt(x) <= K <= x^{19/25}.
inline TypeSumReport type_sum_eval(SumKind kind, std::uint64_t K, std::uint64_t L,
                                   const PhaseSpec& phase, CoeffKind a_kind, CoeffKind b_kind,
                                   int threads = 0) {
    const double x = static_cast<double>(K) * static_cast<double>(L);
    if (x > 1e7) throw resource_error("type_sum_eval: KL capped at 1e7");
    if (phase.h == 0) throw std::invalid_argument("type_sum_eval: envelope needs h != 0");
    const double rootx = std::sqrt(x);
    if (kind == SumKind::type_i) {
        if (static_cast<double>(K) > rootx * 1.0000001)
            throw std::invalid_argument("type_sum_eval: Type I requires K <= x^(1/2)");
        if (b_kind == CoeffKind::mobius)
            throw std::invalid_argument("type_sum_eval: Type I b-coefficients are 1 or log");
    } else {
        if (static_cast<double>(K) * 1.0000001 < rootx || static_cast<double>(K) > std::pow(x, 19.0 / 25) * 1.0000001)
            throw std::invalid_argument("type_sum_eval: Type II requires x^(1/2) <= K <= x^(19/25)");
        if (b_kind == CoeffKind::log_weight)
            throw std::invalid_argument("type_sum_eval: Type II b-coefficients must be bounded");
    }

    std::vector<std::int8_t> mu_k, mu_l;
    if (a_kind == CoeffKind::mobius) mu_k = detail::mobius_range(K + 1, 2 * K + 1);
    if (b_kind == CoeffKind::mobius) mu_l = detail::mobius_range(L + 1, 2 * L + 1);

    std::vector<long double> lg(static_cast<size_t>(L));
    for (std::uint64_t l = L + 1; l <= 2 * L; ++l)
        lg[static_cast<size_t>(l - L - 1)] = powl(static_cast<long double>(l), phase.gamma);

    std::complex<long double> total{0.0L, 0.0L};
    parallel_chunks(
        K + 1, 2 * K + 1, 64, thread_count(threads),
        [&](std::uint64_t klo, std::uint64_t khi) {
            std::complex<long double> acc{0.0L, 0.0L};
            for (std::uint64_t k = klo; k < khi; ++k) {
                const long double ak = detail::coeff_value(a_kind, k, mu_k, K + 1);
                if (ak == 0.0L) continue;
                const long double kg = powl(static_cast<long double>(k), phase.gamma) *
                                       static_cast<long double>(phase.h);
                std::complex<long double> inner{0.0L, 0.0L};
                for (std::uint64_t l = L + 1; l <= 2 * L; ++l) {
                    const long double bl = detail::coeff_value(b_kind, l, mu_l, L + 1);
                    if (bl == 0.0L) continue;
                    long double t = fmodl(kg * lg[static_cast<size_t>(l - L - 1)], 1.0L) + phase.m2;
                    if (phase.m1 != 0.0L)
                        t += fmodl(phase.m1 * static_cast<long double>(k) * static_cast<long double>(l), 1.0L);
                    inner += bl * unit_phase(t);
                }
                acc += ak * inner;
            }
            return acc;
        },
        [&total](std::complex<long double>&& part) { total += part; });

    const double ah = std::abs(static_cast<double>(phase.h));
    const double g = phase.gamma;
    TypeSumReport rep;
    rep.K = K;
    rep.L = L;
    rep.x = x;
    rep.direct = static_cast<double>(std::abs(total));
    if (kind == SumKind::type_i) {
        rep.envelope = std::pow(ah, 1.0 / 6) * std::pow(x, g / 6 + 0.75) +
                       std::pow(ah, -1.0 / 3) * std::pow(x, 1.0 - g / 3);
    } else {
        rep.envelope = std::pow(ah, 0.25) * std::pow(x, g / 4 + 0.625) +
                       std::pow(ah, -0.25) * std::pow(x, 1.0 - g / 4) +
                       std::pow(x, 22.0 / 25) +
                       std::pow(ah, 1.0 / 6) * std::pow(x, g / 6 + 0.75);
    }
    rep.ratio = rep.direct / rep.envelope;
    return rep;
}

// ---- Srinivasan-style parameter optimization ---------------------------------

struct EnvelopeTerm {
    double coef = 1.0;     // positive
    double exponent = 1.0; // sign encodes Q^a vs Q^{-b}
};

inline double envelope_value(std::span<const EnvelopeTerm> terms, double Q) {
    double acc = 0.0;
    for (const auto& t : terms) acc += t.coef * std::pow(Q, t.exponent);
    return acc;
}

// Q in [Q1, Q2] minimizing sum coef_i Q^{e_i} (coef_i > 0): golden-section
// search on log Q, where the envelope is convex.
inline double optimal_q_select(std::span<const EnvelopeTerm> terms, double Q1, double Q2) {
    if (terms.empty()) throw std::invalid_argument("optimal_q_select: empty term list");
    if (!(Q1 > 0.0) || Q1 > Q2) throw std::invalid_argument("optimal_q_select: need 0 < Q1 <= Q2");
    for (const auto& t : terms)
        if (!(t.coef > 0.0)) throw std::invalid_argument("optimal_q_select: coefficients must be positive");
    double lo = std::log(Q1), hi = std::log(Q2);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = envelope_value(terms, std::exp(c)), fd = envelope_value(terms, std::exp(d));
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = envelope_value(terms, std::exp(c));
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = envelope_value(terms, std::exp(d));
        }
    }
    return std::exp((lo + hi) / 2.0);
}

} // namespace bps
