#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bps/mpfloat.hpp"
#include "bps/parse.hpp"
#include "bps/surd.hpp"

using namespace bps;

namespace {

QuadraticSurd sqrt2() { return QuadraticSurd::sqrt_of(mpq_class(2)); }
QuadraticSurd golden() { return QuadraticSurd(1, 1, 5, 2); } // (1+sqrt(5))/2

} // namespace

TEST_CASE("surd normalization", "[exactnum]") {
    // d reduced to squarefree, q folded into the radical
    QuadraticSurd s(0, 1, 8, 2); // sqrt(8)/2 = sqrt(2)
    CHECK(s == sqrt2());
    CHECK(s.d() == 2);
    // gcd(p, q, r) = 1 after construction
    QuadraticSurd t(4, 6, 3, 10);
    CHECK(t.p() == 2);
    CHECK(t.q() == 3);
    CHECK(t.r() == 5);
    // rationals normalize away the radical part
    QuadraticSurd u(3, 0, 7, 2);
    CHECK(u.is_rational());
    CHECK(u.d() == 0);
    CHECK_THROWS_AS(QuadraticSurd(1, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("floor_surd_linear spec examples", "[exactnum]") {
    CHECK(floor_surd_linear(sqrt2(), 1, QuadraticSurd(0)) == 1);          // 1 < sqrt2 < 2
    CHECK(floor_surd_linear(golden(), 10, QuadraticSurd(0)) == 16);       // 10 phi = 16.18...
    QuadraticSurd three_halves(3, 0, 0, 2), half(1, 0, 0, 2);
    CHECK(floor_surd_linear(three_halves, 4, half) == 6);                 // 6.5 -> 6
    // exact integer boundary returns that integer
    CHECK(floor_surd_linear(three_halves, 2, QuadraticSurd(0)) == 3);
    CHECK(floor_surd_linear(sqrt2(), 0, QuadraticSurd(0)) == 0);
}

TEST_CASE("floor_surd_linear round-trip property", "[exactnum]") {
    std::mt19937_64 rng(20240901);
    std::vector<QuadraticSurd> pool = {
        sqrt2(), golden(), QuadraticSurd::sqrt_of(mpq_class(3)),
        QuadraticSurd(3, 0, 0, 2), QuadraticSurd(-1, 2, 2, 3), QuadraticSurd(7, -1, 5, 4),
    };
    for (int iter = 0; iter < 2000; ++iter) {
        const auto& s = pool[rng() % pool.size()];
        QuadraticSurd t = pool[rng() % pool.size()];
        if (!s.is_rational() && !t.is_rational() && s.d() != t.d()) t = QuadraticSurd(1, 0, 0, 3);
        const std::uint64_t n = rng() % 1'000'000'000ull;
        mpz_class k = floor_surd_linear(s, mpz_class(static_cast<unsigned long>(n)), t);
        QuadraticSurd u = s * QuadraticSurd(mpz_class(static_cast<unsigned long>(n)), 0, 0, 1) + t;
        QuadraticSurd kf(k, 0, 0, 1), kc(k + 1, 0, 0, 1);
        CHECK(QuadraticSurd::compare(kf, u) <= 0);
        CHECK(QuadraticSurd::compare(u, kc) < 0);
    }
}

TEST_CASE("compare_surd", "[exactnum]") {
    CHECK(QuadraticSurd::compare(sqrt2(), QuadraticSurd(3, 0, 0, 2)) < 0); // sqrt2 < 1.5
    CHECK(QuadraticSurd::compare(golden(), QuadraticSurd(8, 0, 0, 5)) > 0); // phi > 1.6
    CHECK(QuadraticSurd::compare(QuadraticSurd(7, 0, 0, 3), QuadraticSurd(7, 0, 0, 3)) == 0);
    CHECK_THROWS_AS(QuadraticSurd::compare(sqrt2(), QuadraticSurd::sqrt_of(mpq_class(3))),
                    std::invalid_argument);
}

TEST_CASE("surd arithmetic", "[exactnum]") {
    // omega * alpha = 1 exactly
    QuadraticSurd w = sqrt2().inverse();
    CHECK(w * sqrt2() == QuadraticSurd(1));
    // 1/phi = phi - 1
    CHECK(golden().inverse() == golden() - QuadraticSurd(1));
    // 1/sqrt(2) = sqrt(2)/2
    CHECK(w == QuadraticSurd(0, 1, 2, 2));
    CHECK_THROWS_AS(sqrt2() + QuadraticSurd::sqrt_of(mpq_class(3)), std::invalid_argument);
    CHECK_THROWS_AS(QuadraticSurd(0).inverse(), std::invalid_argument);
}

TEST_CASE("floor_rational_power spec examples", "[exactnum]") {
    CHECK(floor_rational_power(8, RationalExponent(2, 3)) == 4);   // perfect power
    CHECK(floor_rational_power(10, RationalExponent(13, 12)) == 12);
    CHECK(floor_rational_power(0, RationalExponent(13, 12)) == 0);
    auto rr = floor_rational_power_checked(8, RationalExponent(2, 3));
    CHECK(rr.exact);
    rr = floor_rational_power_checked(10, RationalExponent(13, 12));
    CHECK_FALSE(rr.exact);
    CHECK(ceil_rational_power(10, RationalExponent(13, 12)) == 13);
    CHECK(ceil_rational_power(8, RationalExponent(2, 3)) == 4);
    CHECK_THROWS_AS(floor_rational_power(-1, RationalExponent(2, 3)), std::invalid_argument);
}

TEST_CASE("floor_rational_power bracket postcondition", "[exactnum]") {
    std::mt19937_64 rng(77);
    const RationalExponent exps[] = {{13, 12}, {2, 3}, {5, 4}, {25, 23}};
    for (int iter = 0; iter < 100'000; ++iter) {
        const RationalExponent e = exps[iter % 4];
        std::uint64_t m = rng() % 1'000'000'000'000'000'000ull;
        mpz_class mm(static_cast<unsigned long>(m));
        mpz_class k = floor_rational_power(mm, e);
        mpz_class v, kp;
        mpz_pow_ui(v.get_mpz_t(), mm.get_mpz_t(), e.num);
        mpz_pow_ui(kp.get_mpz_t(), k.get_mpz_t(), e.den);
        REQUIRE(kp <= v);
        mpz_class k1 = k + 1;
        mpz_pow_ui(kp.get_mpz_t(), k1.get_mpz_t(), e.den);
        REQUIRE(kp > v);
    }
}

TEST_CASE("floor_rational_power monotone", "[exactnum]") {
    std::mt19937_64 rng(78);
    const RationalExponent e(13, 12);
    for (int iter = 0; iter < 5000; ++iter) {
        std::uint64_t m1 = rng() % 1'000'000'000ull, m2 = rng() % 1'000'000'000ull;
        if (m1 > m2) std::swap(m1, m2);
        CHECK(floor_rational_power(static_cast<unsigned long>(m1), e) <=
              floor_rational_power(static_cast<unsigned long>(m2), e));
    }
}

TEST_CASE("floor_rational_power agrees with 256-bit evaluation", "[exactnum]") {
    std::mt19937_64 rng(79);
    const RationalExponent e(13, 12);
    for (int iter = 0; iter < 2000; ++iter) {
        std::uint64_t m = 2 + rng() % 1'000'000'000'000ull;
        Real v(256), f(256);
        mpz_class mp(static_cast<unsigned long>(m));
        mpz_class mn;
        mpz_pow_ui(mn.get_mpz_t(), mp.get_mpz_t(), e.num);
        mpfr_set_z(v.get(), mn.get_mpz_t(), MPFR_RNDN);
        mpfr_rootn_ui(v.get(), v.get(), e.den, MPFR_RNDN);
        mpfr_floor(f.get(), v.get());
        // authoritative only away from integer boundaries
        Real frac(256);
        mpfr_sub(frac.get(), v.get(), f.get(), MPFR_RNDN);
        const double fr = mpfr_get_d(frac.get(), MPFR_RNDN);
        if (fr < 1e-40 || fr > 1.0 - 1e-40) continue;
        mpz_class kf;
        mpfr_get_z(kf.get_mpz_t(), f.get(), MPFR_RNDD);
        CHECK(floor_rational_power(mp, e) == kf);
    }
}

TEST_CASE("RationalPowerEval matches the mpz path", "[exactnum]") {
    std::mt19937_64 rng(80);
    RationalPowerEval eval(RationalExponent(13, 12));
    for (int iter = 0; iter < 20'000; ++iter) {
        std::uint64_t m = rng() % 2'000'000'000ull;
        bool exact = false;
        std::uint64_t k = eval.floor_pow(m, &exact);
        auto ref = floor_rational_power_checked(mpz_class(static_cast<unsigned long>(m)),
                                                RationalExponent(13, 12));
        CHECK(mpz_class(static_cast<unsigned long>(k)) == ref.value);
        CHECK(exact == ref.exact);
    }
    CHECK(eval.ceil_pow(10) == 13);
    CHECK(eval.floor_pow(4096) == 4096 * 2); // 4096^(13/12) = 2^13
}

TEST_CASE("surd text syntax", "[exactnum]") {
    CHECK(parse_surd("sqrt(2)") == sqrt2());
    CHECK(parse_surd("(1+sqrt(5))/2") == golden());
    CHECK(parse_surd("3/2") == QuadraticSurd(3, 0, 0, 2));
    CHECK(parse_surd("1.25") == QuadraticSurd(5, 0, 0, 4));
    CHECK(parse_surd("0.3") == QuadraticSurd(3, 0, 0, 10));
    CHECK(parse_surd("1/sqrt(2)") == QuadraticSurd(0, 1, 2, 2));
    CHECK(parse_surd("sqrt(2)/2") == parse_surd("1/sqrt(2)"));
    CHECK(parse_surd("-sqrt(2)") == -sqrt2());
    CHECK(parse_surd("1+1/2") == QuadraticSurd(3, 0, 0, 2));
    CHECK(parse_surd(" ( 2 + 3 * sqrt( 2 ) ) / 7 ") == QuadraticSurd(2, 3, 2, 7));
    CHECK(parse_surd("(3+0*sqrt(7))/2") == QuadraticSurd(3, 0, 0, 2));

    CHECK_THROWS_AS(parse_surd("sqrt(2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surd("2 + "), std::invalid_argument);
    CHECK_THROWS_AS(parse_surd("frob"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surd("sqrt(sqrt(2))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surd("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_surd("sqrt(0-2)"), std::invalid_argument);
}

TEST_CASE("exponent syntax", "[exactnum]") {
    CHECK(parse_exponent("13/12") == RationalExponent(13, 12));
    CHECK(parse_exponent("26/24") == RationalExponent(13, 12));
    CHECK(parse_exponent("2") == RationalExponent(2, 1));
    CHECK(parse_exponent("1.25") == RationalExponent(5, 4));
    CHECK_THROWS_AS(parse_exponent("sqrt(2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_exponent("0"), std::invalid_argument);
}
