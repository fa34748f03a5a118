#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "bps/expsum.hpp"

using namespace bps;

TEST_CASE("sawtooth", "[expsum]") {
    CHECK(sawtooth(0.75) == Catch::Approx(0.25));
    CHECK(sawtooth(-0.25) == Catch::Approx(0.25));
    CHECK(sawtooth(3.0) == Catch::Approx(-0.5));
    CHECK(sawtooth(0.0) == Catch::Approx(-0.5));
    CHECK(sawtooth(1234567.125) == Catch::Approx(-0.375));
}

TEST_CASE("vaaler coefficient bounds", "[expsum]") {
    for (int H : {1, 4, 16, 64}) {
        VaalerApprox v(H);
        for (int h = 1; h <= H; ++h) {
            CHECK(std::abs(v.a(h)) <= 0.5 / h);
            CHECK(std::abs(v.a(-h) - std::conj(v.a(h))) == 0.0);
        }
        for (int h = 0; h <= H; ++h) {
            CHECK(v.b(h) >= 0.0);
            CHECK(v.b(h) <= 1.0 / (H + 1));
        }
    }
    CHECK_THROWS_AS(VaalerApprox(0), std::invalid_argument);
}

TEST_CASE("vaaler majorant holds on a dense grid", "[expsum]") {
    for (int H : {4, 16, 64}) {
        VaalerApprox v(H);
        CHECK(v.max_violation(10'000) <= 1e-12);
        for (int i = 0; i < 997; ++i) {
            CHECK(v.majorant(i / 997.0) >= -1e-15);
        }
    }
    VaalerApprox v16(16);
    const double t = 0.3;
    CHECK(std::abs(sawtooth(t) - v16.approx(t)) <= v16.majorant(t) + 1e-15);
}

TEST_CASE("lambda_expsum Chebyshev degenerate phase", "[expsum]") {
    PhaseSpec flat{.h = 0, .gamma = 0.5, .m1 = 0.0L, .m2 = 0.0L};
    const auto s = lambda_expsum(flat, 0, 10'000);
    CHECK(s.real() == Catch::Approx(static_cast<double>(chebyshev_psi(10'000))).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-9);
    // phase identically m2 rotates the same sum
    PhaseSpec rot{.h = 0, .gamma = 0.5, .m1 = 0.0L, .m2 = 0.25L};
    const auto r = lambda_expsum(rot, 0, 10'000);
    CHECK(r.imag() == Catch::Approx(s.real()).epsilon(1e-9));
    CHECK(std::abs(r.real()) < 1e-6);
    // range convention: (lo, hi]
    const auto tail = lambda_expsum(flat, 5'000, 10'000);
    CHECK(tail.real() ==
          Catch::Approx(static_cast<double>(chebyshev_psi(10'000) - chebyshev_psi(5'000))).epsilon(1e-12));
}

TEST_CASE("lambda_expsum cancellation and symmetry", "[expsum]") {
    PhaseSpec irr{.h = 0, .gamma = 0.5, .m1 = sqrtl(2.0L), .m2 = 0.0L};
    const auto s = lambda_expsum(irr, 10'000, 20'000);
    const double mass = static_cast<double>(chebyshev_psi(20'000) - chebyshev_psi(10'000));
    CHECK(std::abs(s) / mass < 0.5);

    PhaseSpec neg{.h = 0, .gamma = 0.5, .m1 = -sqrtl(2.0L), .m2 = 0.0L};
    const auto sneg = lambda_expsum(neg, 10'000, 20'000);
    CHECK(sneg.real() == Catch::Approx(s.real()).margin(1e-9));
    CHECK(sneg.imag() == Catch::Approx(-s.imag()).margin(1e-9));

    PhaseSpec curved{.h = 3, .gamma = 12.0 / 13, .m1 = 0.5L, .m2 = 0.125L};
    PhaseSpec curved_neg{.h = -3, .gamma = 12.0 / 13, .m1 = -0.5L, .m2 = -0.125L};
    const auto a = lambda_expsum(curved, 1000, 50'000);
    const auto b = lambda_expsum(curved_neg, 1000, 50'000);
    CHECK(b.real() == Catch::Approx(a.real()).margin(1e-9));
    CHECK(b.imag() == Catch::Approx(-a.imag()).margin(1e-9));

    CHECK_THROWS_AS(lambda_expsum(irr, 0, 200'000'000ull), resource_error);
}

TEST_CASE("lambda_expsum deterministic across thread counts", "[expsum]") {
    PhaseSpec phase{.h = 1, .gamma = 12.0 / 13, .m1 = sqrtl(2.0L), .m2 = 0.0L};
    const auto one = lambda_expsum(phase, 0, 300'000, 1);
    const auto four = lambda_expsum(phase, 0, 300'000, 4);
    CHECK(one.real() == four.real()); // bitwise: fixed chunking, ordered reduce
    CHECK(one.imag() == four.imag());
}

TEST_CASE("heath-brown identity small cases", "[expsum]") {
    CHECK(heath_brown_residual(7, {.z = 2, .k = 3}) < 1e-9);   // Lambda(7) = log 7
    CHECK(heath_brown_residual(12, {.z = 3, .k = 2}) < 1e-9);  // Lambda(12) = 0
    CHECK(heath_brown_residual(1, {.z = 10, .k = 3}) < 1e-9);
    CHECK(heath_brown_residual(64, {.z = 10, .k = 3}) < 1e-9); // prime power
    CHECK_THROWS_AS(heath_brown_residual(17, {.z = 2, .k = 3}), std::invalid_argument); // 17 > 2 z^k
    CHECK_THROWS_AS(heath_brown_residual(5, {.z = 0.5, .k = 3}), std::invalid_argument);
}

TEST_CASE("heath-brown exhaustive to 2000", "[expsum]") {
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= 2000; ++n)
        worst = std::max(worst, heath_brown_residual(n, {.z = 10, .k = 3}));
    CHECK(worst < 1e-9);
}

TEST_CASE("vdc bound check", "[expsum]") {
    // quadratic with lambda_2 exactly 1
    auto q = vdc_bound_check(0.5, 2.0, 10'000, 2);
    CHECK(q.lambda_j == Catch::Approx(1.0));
    CHECK(q.ok);
    CHECK(q.ratio >= 0.0);

    for (int order : {2, 3}) {
        auto r = vdc_bound_check(1.0, 12.0 / 13, 10'000, order);
        CHECK(r.ok);
        CHECK(r.ratio <= 10.0);
        CHECK(r.envelope > 0.0);
    }

    CHECK_THROWS_AS(vdc_bound_check(1.0, 1.0, 1000, 2), std::invalid_argument);  // linear: lambda_2 = 0
    CHECK_THROWS_AS(vdc_bound_check(0.5, 2.0, 1000, 3), std::invalid_argument);  // lambda_3 = 0
    CHECK_THROWS_AS(vdc_bound_check(1.0, 0.9, 1000, 4), std::invalid_argument);
}

TEST_CASE("type sums", "[expsum]") {
    PhaseSpec phase{.h = 1, .gamma = 12.0 / 13, .m1 = 0.0L, .m2 = 0.0L};
    auto t1 = type_sum_eval(SumKind::type_i, 100, 10'000, phase, CoeffKind::unit, CoeffKind::unit);
    CHECK(t1.ratio > 0.0);
    CHECK(t1.ratio < 10.0);
    CHECK(t1.x == Catch::Approx(1e6));

    auto t2 = type_sum_eval(SumKind::type_ii, 1000, 1000, phase, CoeffKind::mobius, CoeffKind::mobius);
    CHECK(t2.ratio > 0.0);
    CHECK(t2.ratio < 10.0);

    // negating h conjugates the sum, so |S| is unchanged
    PhaseSpec neg = phase;
    neg.h = -1;
    auto t2n = type_sum_eval(SumKind::type_ii, 1000, 1000, neg, CoeffKind::mobius, CoeffKind::mobius);
    CHECK(t2n.direct == Catch::Approx(t2.direct).epsilon(1e-12));

    auto t1l = type_sum_eval(SumKind::type_i, 50, 2000, phase, CoeffKind::unit, CoeffKind::log_weight);
    CHECK(t1l.direct >= 0.0);

    // range-condition flags
    CHECK_THROWS_AS(type_sum_eval(SumKind::type_i, 10'000, 100, phase, CoeffKind::unit, CoeffKind::unit),
                    std::invalid_argument);
    CHECK_THROWS_AS(type_sum_eval(SumKind::type_ii, 100, 10'000, phase, CoeffKind::mobius, CoeffKind::mobius),
                    std::invalid_argument);
    CHECK_THROWS_AS(type_sum_eval(SumKind::type_i, 4000, 4000, phase, CoeffKind::unit, CoeffKind::unit),
                    resource_error);
    PhaseSpec zero = phase;
    zero.h = 0;
    CHECK_THROWS_AS(type_sum_eval(SumKind::type_i, 100, 1000, zero, CoeffKind::unit, CoeffKind::unit),
                    std::invalid_argument);
}

TEST_CASE("type sum determinism across threads", "[expsum]") {
    PhaseSpec phase{.h = 2, .gamma = 12.0 / 13, .m1 = 0.3L, .m2 = 0.0L};
    auto a = type_sum_eval(SumKind::type_ii, 700, 700, phase, CoeffKind::mobius, CoeffKind::mobius, 1);
    auto b = type_sum_eval(SumKind::type_ii, 700, 700, phase, CoeffKind::mobius, CoeffKind::mobius, 4);
    CHECK(a.direct == b.direct);
}

TEST_CASE("optimal Q selection", "[expsum]") {
    // A Q + B/Q minimized at sqrt(B/A) with value 2 sqrt(AB)
    EnvelopeTerm terms[] = {{2.0, 1.0}, {32.0, -1.0}};
    const double q = optimal_q_select(terms, 1.0, 1e9);
    CHECK(q == Catch::Approx(4.0).epsilon(1e-6));
    CHECK(envelope_value(terms, q) <= 2.0 * std::sqrt(2.0 * 32.0) * (1.0 + 1e-9));

    // clamped: Q2 below the unconstrained optimum
    CHECK(optimal_q_select(terms, 1.0, 2.0) == Catch::Approx(2.0).epsilon(1e-6));

    // three-term envelope against a grid oracle
    EnvelopeTerm three[] = {{1.0, 2.0}, {5.0, 0.5}, {100.0, -1.5}};
    const double qq = optimal_q_select(three, 0.5, 1e4);
    const double vq = envelope_value(three, qq);
    for (int i = 0; i <= 100; ++i) {
        const double g = 0.5 * std::pow(1e4 / 0.5, i / 100.0);
        CHECK(vq <= envelope_value(three, g) * (1.0 + 1e-9));
    }
    CHECK_THROWS_AS(optimal_q_select({}, 1.0, 2.0), std::invalid_argument);
    EnvelopeTerm bad[] = {{-1.0, 1.0}};
    CHECK_THROWS_AS(optimal_q_select(bad, 1.0, 2.0), std::invalid_argument);
}
