#pragma once

// Thin RAII wrapper over MPFR for the few places that need high-precision
// floating evaluation (psi-identity residuals, cross-checks against the
// exact integer paths, continued fractions of non-quadratic reals).

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "bps/surd.hpp"

namespace bps {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

inline void set_from_surd(mpfr_ptr out, const QuadraticSurd& s, mpfr_rnd_t rnd = MPFR_RNDN) {
    if (s.is_rational()) {
        mpfr_set_q(out, mpq_class(s.p(), s.r()).get_mpq_t(), rnd);
        return;
    }
    mpfr_sqrt_ui(out, s.d(), rnd);
    mpfr_mul_z(out, out, s.q().get_mpz_t(), rnd);
    mpfr_add_z(out, out, s.p().get_mpz_t(), rnd);
    mpfr_div_z(out, out, s.r().get_mpz_t(), rnd);
}

inline Real surd_to_real(const QuadraticSurd& s, mpfr_prec_t prec = 256) {
    Real r(prec);
    set_from_surd(r.get(), s);
    return r;
}

// sawtooth psi(t) = t - floor(t) - 1/2, in place
inline void mpfr_sawtooth(mpfr_ptr t, mpfr_prec_t prec) {
    Real f(prec);
    mpfr_floor(f.get(), t);
    mpfr_sub(t, t, f.get(), MPFR_RNDN);
    mpfr_sub_d(t, t, 0.5, MPFR_RNDN);
}

} // namespace bps
