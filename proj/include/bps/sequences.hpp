#pragma once

// Exact membership characteristic functions and enumerators for Beatty
// sequences floor(alpha n + beta) and Piatetski-Shapiro sequences
// floor(n^c), plus the sawtooth-expansion identities behind them.
//
// Membership of m in the Beatty sequence:
//     X(m) = floor(-omega (m - beta)) - floor(-omega (m + 1 - beta)),
// and in the PS sequence (gamma = 1/c):
//     X(m) = floor(-m^gamma) - floor(-(m+1)^gamma)
//          = ceil((m+1)^gamma) - ceil(m^gamma).
// Both are decided by exact integer arithmetic.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bps/mpfloat.hpp"
#include "bps/surd.hpp"

namespace bps {

class BeattySpec {
public:
    BeattySpec(QuadraticSurd alpha, QuadraticSurd beta)
        : alpha_(std::move(alpha)),
          beta_(std::move(beta)),
          omega_(alpha_.inverse()),
          rational_alpha_(alpha_.is_rational()),
          char_eval_(-omega_, omega_ * beta_),
          value_eval_(alpha_, beta_) {
        if (QuadraticSurd::compare(alpha_, QuadraticSurd(1)) <= 0)
            throw std::invalid_argument("BeattySpec: alpha must exceed 1");
    }

    const QuadraticSurd& alpha() const { return alpha_; }
    const QuadraticSurd& beta() const { return beta_; }
    const QuadraticSurd& omega() const { return omega_; }
    // the theorems need irrational alpha; rational specs are allowed for
    // degenerate test cases and flagged here
    bool rational_alpha_warning() const { return rational_alpha_; }

    // 1 iff m = floor(alpha n + beta) for some n >= 1
    int characteristic(std::uint64_t m) const {
        return static_cast<int>(char_eval_.floor_at(m) - char_eval_.floor_at(m + 1));
    }

    std::int64_t value_at(std::uint64_t n) const { return value_eval_.floor_at(n); }

    // largest n with floor(alpha n + beta) <= limit
    std::uint64_t index_for_limit(std::uint64_t limit) const {
        // alpha n + beta < limit+1  <=>  n < (limit+1-beta) omega
        QuadraticSurd u = (QuadraticSurd(mpz_class(limit) + 1, 0, 0, 1) - beta_) * omega_;
        mpz_class f = u.floor();
        if (u.is_rational() && u.as_rational() == mpq_class(f)) f -= 1; // exact boundary
        if (sgn(f) < 0) return 0;
        return f.get_ui();
    }

    class Enumerator {
    public:
        Enumerator(const BeattySpec& spec, std::uint64_t limit, std::uint64_t first_index = 1)
            : eval_(spec.alpha(), spec.beta()), limit_(limit), n_(first_index) {}

        std::optional<std::int64_t> next() {
            std::int64_t v = eval_.floor_at(n_);
            if (v > 0 && static_cast<std::uint64_t>(v) > limit_) return std::nullopt;
            ++n_;
            return v;
        }

        std::uint64_t index() const { return n_; } // next index to be consumed

    private:
        LinearFloorEval eval_;
        std::uint64_t limit_;
        std::uint64_t n_;
    };

    Enumerator enumerate(std::uint64_t limit) const { return Enumerator(*this, limit); }

private:
    QuadraticSurd alpha_, beta_, omega_;
    bool rational_alpha_;
    LinearFloorEval char_eval_;  // floor(-omega m + omega beta) at m, m+1
    LinearFloorEval value_eval_; // floor(alpha n + beta)
};

enum class PSRange {
    strict, // theorem range (1, 12/11) enforced
    warn,   // anything in (1, 2) accepted, flags report the ranges
};

class PSSpec {
public:
    explicit PSSpec(RationalExponent c, PSRange mode = PSRange::strict)
        : c_(c), gamma_(c.reciprocal()), value_eval_(c_), gamma_eval_(gamma_) {
        const bool above_one = c_.num > c_.den;
        in_theorem_range_ = above_one && 11ull * c_.num < 12ull * c_.den;
        in_prediction_range_ = above_one && 2426ull * c_.num < 2817ull * c_.den;
        const bool below_two = c_.num < 2 * c_.den;
        if (!above_one || !below_two) throw std::invalid_argument("PSSpec: c must lie in (1, 2)");
        if (mode == PSRange::strict && !in_theorem_range_)
            throw std::invalid_argument("PSSpec: c outside (1, 12/11); use warn mode to override");
    }

    RationalExponent c() const { return c_; }
    RationalExponent gamma() const { return gamma_; }
    double c_value() const { return c_.value(); }
    double gamma_value() const { return gamma_.value(); }
    bool in_theorem_range() const { return in_theorem_range_; }
    bool in_prediction_range() const { return in_prediction_range_; }

    // 1 iff m = floor(n^c) for some n >= 1
    int characteristic(std::uint64_t m) const {
        return static_cast<int>(gamma_eval_.ceil_pow(m + 1) - gamma_eval_.ceil_pow(m));
    }

    std::uint64_t value_at(std::uint64_t n) const { return value_eval_.floor_pow(n); }

    // largest n with floor(n^c) <= limit
    std::uint64_t max_index(std::uint64_t limit) const {
        // n^c < limit+1  <=>  n <= ceil((limit+1)^gamma) - 1
        return gamma_eval_.ceil_pow(limit + 1) - 1;
    }

    class Enumerator {
    public:
        Enumerator(const PSSpec& spec, std::uint64_t limit, std::uint64_t first_index = 1)
            : eval_(spec.c()), limit_(limit), n_(first_index) {}

        std::optional<std::uint64_t> next() {
            std::uint64_t v = eval_.floor_pow(n_);
            if (v > limit_) return std::nullopt;
            ++n_;
            return v;
        }

        std::uint64_t index() const { return n_; }

    private:
        RationalPowerEval eval_;
        std::uint64_t limit_;
        std::uint64_t n_;
    };

    Enumerator enumerate(std::uint64_t limit) const { return Enumerator(*this, limit); }

private:
    RationalExponent c_, gamma_;
    RationalPowerEval value_eval_; // floor(n^c)
    RationalPowerEval gamma_eval_; // floor/ceil(m^gamma)
    bool in_theorem_range_ = false;
    bool in_prediction_range_ = false;
};

// ---- sawtooth-expansion identities ----------------------------------------
//
// X_{alpha,beta}(m) = omega + psi(-omega(m+1-beta)) - psi(-omega(m-beta))
// holds exactly; the returned residual is the defect of the high-precision
// evaluation against the exact integer characteristic.

namespace detail {

inline constexpr mpfr_prec_t kIdentityPrec = 256;

// out = psi(-(surd) * (m + shift - beta)) for linear surd arguments
inline double psi_of_linear(const QuadraticSurd& omega, const QuadraticSurd& beta,
                            std::uint64_t m, unsigned shift, mpfr_ptr acc) {
    QuadraticSurd arg = -omega * (QuadraticSurd(mpz_class(m) + shift, 0, 0, 1) - beta);
    set_from_surd(acc, arg);
    mpfr_sawtooth(acc, kIdentityPrec);
    return mpfr_get_d(acc, MPFR_RNDN);
}

// t^(e.num/e.den) at high precision for integer t
inline void mpfr_rational_pow(mpfr_ptr out, std::uint64_t t, RationalExponent e) {
    mpz_class td;
    mpz_ui_pow_ui(td.get_mpz_t(), t, e.num);
    mpfr_set_z(out, td.get_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(out, out, e.den, MPFR_RNDN);
}

} // namespace detail

inline double beatty_psi_identity_residual(const BeattySpec& spec, std::uint64_t m) {
    const int x = spec.characteristic(m);
    Real acc(detail::kIdentityPrec), omega(detail::kIdentityPrec);
    set_from_surd(omega.get(), spec.omega());
    double analytic = mpfr_get_d(omega.get(), MPFR_RNDN);
    analytic += detail::psi_of_linear(spec.omega(), spec.beta(), m, 1, acc.get());
    analytic -= detail::psi_of_linear(spec.omega(), spec.beta(), m, 0, acc.get());
    return std::abs(static_cast<double>(x) - analytic);
}

// Exact-difference form: X(m) = (m+1)^g - m^g + psi(-(m+1)^g) - psi(-m^g).
inline double ps_psi_identity_residual(const PSSpec& spec, std::uint64_t m) {
    const int x = spec.characteristic(m);
    const RationalExponent g = spec.gamma();
    Real a(detail::kIdentityPrec), b(detail::kIdentityPrec);
    detail::mpfr_rational_pow(a.get(), m + 1, g);
    detail::mpfr_rational_pow(b.get(), m, g);
    Real t(detail::kIdentityPrec);
    mpfr_sub(t.get(), a.get(), b.get(), MPFR_RNDN);
    double analytic = mpfr_get_d(t.get(), MPFR_RNDN);
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    mpfr_sawtooth(a.get(), detail::kIdentityPrec);
    analytic += mpfr_get_d(a.get(), MPFR_RNDN);
    mpfr_neg(b.get(), b.get(), MPFR_RNDN);
    mpfr_sawtooth(b.get(), detail::kIdentityPrec);
    analytic -= mpfr_get_d(b.get(), MPFR_RNDN);
    return std::abs(static_cast<double>(x) - analytic);
}

// Defect of the Taylor form gamma m^(gamma-1) against the exact difference
// (m+1)^gamma - m^gamma; decays like m^(gamma-2).
inline double ps_taylor_remainder(const PSSpec& spec, std::uint64_t m) {
    const RationalExponent g = spec.gamma();
    Real a(detail::kIdentityPrec), b(detail::kIdentityPrec), t(detail::kIdentityPrec);
    detail::mpfr_rational_pow(a.get(), m + 1, g);
    detail::mpfr_rational_pow(b.get(), m, g);
    mpfr_sub(a.get(), a.get(), b.get(), MPFR_RNDN);
    // gamma * m^(gamma-1) = gamma * m^gamma / m
    mpfr_mul_ui(t.get(), b.get(), g.num, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), g.den, MPFR_RNDN);
    mpfr_div_ui(t.get(), t.get(), m, MPFR_RNDN);
    mpfr_sub(a.get(), a.get(), t.get(), MPFR_RNDN);
    return std::abs(mpfr_get_d(a.get(), MPFR_RNDN));
}

} // namespace bps
