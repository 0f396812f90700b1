#include <catch_amalgamated.hpp>

#include <cmath>

#include "sharpcode/codes.hpp"
#include "sharpcode/potentials.hpp"

using namespace sharpcode;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("kernel values and derivatives") {
    const auto r1 = riesz(1);
    CHECK_THAT(r1(0.5), WithinRel(1.0, 1e-15));
    CHECK_THAT(r1(-1), WithinRel(0.5, 1e-15));
    const auto lg = log_potential();
    CHECK_THAT(lg(-0.5), WithinAbs(-0.5 * std::log(3.0), 1e-15));
    const auto e = exp_potential(2);
    CHECK_THAT(e(0.3), WithinRel(std::exp(0.6), 1e-15));
    const auto te = trunc_exp(1);
    CHECK_THAT(te(1), WithinRel(std::exp(1.0), 1e-12));
    for (const Potential* h : {&r1, &lg, &e, &te})
        for (double t : {-0.9, -0.1, 0.4, 0.8}) {
            const double fd = ((*h)(t + 1e-6) - (*h)(t - 1e-6)) / 2e-6;
            CHECK_THAT(h->derivative(t), WithinRel(fd, 1e-6));
        }
}

TEST_CASE("derivative-sign descriptors") {
    CHECK(riesz(1).sign == SignCase::abs_monotone);
    CHECK(riesz(-1).sign == SignCase::case_ii);
    CHECK(riesz(-3).sign == SignCase::custom);
    CHECK(log_potential().sign == SignCase::abs_monotone);
    CHECK(exp_potential(-1).sign == SignCase::custom);
    CHECK(trunc_exp(1).d16_nonpositive);
    CHECK_FALSE(trunc_exp(2).d16_nonpositive);
    CHECK(riesz(1).singular_at_one);
    CHECK_FALSE(riesz(-1).singular_at_one);
}

TEST_CASE("potential spec parsing") {
    CHECK(parse_potential("riesz:3").spec == "riesz:3");
    CHECK_THAT(parse_potential("exp:1")(0.5), WithinRel(std::exp(0.5), 1e-15));
    CHECK_THROWS_AS(parse_potential("riesz:"), InvalidArgument);
    CHECK_THROWS_AS(parse_potential("riesz:1x"), InvalidArgument);
    CHECK_THROWS_AS(parse_potential("gauss:1"), InvalidArgument);
    CHECK_THROWS_AS(riesz(0), InvalidArgument);
}

TEST_CASE("cusp kernels evaluate at a rounded self inner product") {
    const auto h = riesz(-1);
    CHECK(h(1 + 2e-16) == 0.0);
    CHECK(h(1 - 2e-16) == 0.0);
    CHECK_THAT(h(-1 - 1e-16), WithinRel(2.0, 1e-15));
}

TEST_CASE("divided differences of a polynomial") {
    // h = t^3: every third divided difference is 1, fourth is 0.
    Potential h;
    h.spec = "cube";
    h.value_fn = [](double t) { return t * t * t; };
    h.derivative_fn = [](double t) { return 3 * t * t; };
    const NodeMultiset m{-0.5, -0.5, 0.2, 0.7, 0.7};
    const auto dd = divided_differences(h, m);
    CHECK_THAT(double(dd[3]), WithinAbs(1.0, 1e-13));
    CHECK_THAT(double(dd[4]), WithinAbs(0.0, 1e-13));
    const auto P = hermite_interpolant(h, m);
    for (double t : {-1.0, 0.0, 0.33, 1.0}) CHECK_THAT(P(t), WithinAbs(t * t * t, 1e-13));
}

TEST_CASE("Hermite interpolant matches value and slope at doubled nodes") {
    const auto h = riesz(1);
    const NodeMultiset m = doubled_interior({-1, -0.4, 0.3});
    REQUIRE(m.size() == 5);
    const auto P = hermite_interpolant(h, m);
    const auto dP = P.derivative();
    for (double x : {-0.4, 0.3}) {
        CHECK_THAT(P(x), WithinRel(h(x), 1e-12));
        CHECK_THAT(dP(x), WithinRel(h.derivative(x), 1e-10));
    }
    CHECK_THAT(P(-1.0), WithinRel(h(-1.0), 1e-12));
}

TEST_CASE("node multisets are validated") {
    CHECK_THROWS_AS(check_multiset(riesz(1), {0.1, 0.1, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(check_multiset(riesz(1), {0.1, 0.2, 0.1}), InvalidArgument);
    CHECK_THROWS_AS(check_multiset(riesz(1), {0.1, 1.0}), SingularEvaluation);
    CHECK_NOTHROW(check_multiset(riesz(-1), {0.1, 1.0}));
}

TEST_CASE("first-level interpolants are dominated and exact at the nodes") {
    for (const char* spec : {"riesz:1", "riesz:3", "exp:1", "log"})
        for (auto [n, tau] : {std::pair{3, 3}, {8, 7}, {22, 5}, {23, 7}}) {
            CAPTURE(spec, n, tau);
            const auto h = parse_potential(spec);
            const auto I = case_interpolant(n, tau, Case::i, h);
            CHECK(I.poly.degree() <= tau);
            CHECK(I.dom.worst <= 1e-9);
            for (double x : pulb_case_i(n, tau).nodes) CHECK_THAT(I.poly(x), WithinRel(h(x), 1e-9));
        }
    const auto I = case_interpolant(22, 4, Case::ii, riesz(-1));
    CHECK(I.dom.worst <= 1e-9);
    CHECK_THROWS_AS(case_interpolant(3, 3, Case::ii, riesz(1)), InvalidArgument);
    CHECK_THROWS_AS(case_interpolant(3, 3, Case::i, riesz(-1)), InvalidArgument);
}

TEST_CASE("second-level interpolant annihilates the skipped degree") {
    for (auto [n, k] : {std::pair{3, 3}, {8, 4}, {24, 6}})
        for (const char* spec : {"riesz:1", "exp:1"}) {
            CAPTURE(n, k, spec);
            const auto I = second_level_interpolant(n, k, parse_potential(spec));
            CHECK(std::fabs(I.annihilated) <= 1e-9 * std::max(1.0, std::fabs(gegenbauer_expand(n, I.poly)[0])));
            CHECK(I.correction >= 0);
            CHECK(I.dom.worst <= 1e-9);
            CHECK(I.poly.degree() <= 2 * k + 2);
        }
}

TEST_CASE("squared node polynomial coefficients at the skipped degree") {
    CHECK_THAT(second_level_e(3, 3), WithinRel(128.0 / 3465, 1e-12));
    CHECK_THAT(second_level_e(8, 4), WithinRel(143.0 / 2048, 1e-12));
    CHECK_THAT(second_level_e(24, 6), WithinRel(516925.0 / 5292032, 1e-12));
}

TEST_CASE("600-cell interpolant") {
    const auto I = cell600_interpolant(trunc_exp(1), false);
    CHECK(std::fabs(I.annihilated) < 1e-10);
    CHECK(I.poly.degree() == 16);
    SECTION("exact on the 600-cell potential at a code point") {
        const auto C = build_code("cell_600");
        double s = 0;
        for (std::size_t j = 0; j < C->N; ++j) s += I.poly(dot(C->point(0), C->point(j), 4));
        CHECK_THAT(s, WithinRel(120 * gegenbauer_expand(4, I.poly)[0], 1e-12));
    }
    SECTION("agrees with h on the inner products of the 600-cell") {
        const auto h = trunc_exp(1);
        for (double x : cell600_inner_products()) CHECK_THAT(I.poly(x), WithinRel(h(x), 1e-10));
    }
    SECTION("the annihilating correction pushes the interpolant above h") {
        // trunc_exp(1) has degree 15, so the Hermite part reproduces h and the
        // correction, a positive multiple of a polynomial <= 0 on [-1,1],
        // lifts H above h off the nodes. The excess is far below the
        // domination tolerance.
        CHECK(I.correction > 0);
        CHECK(I.dom.worst > 0);
        CHECK(I.dom.worst < 1e-9);
        CHECK_NOTHROW(cell600_interpolant(trunc_exp(1), true));
    }
    CHECK_THROWS_AS(cell600_interpolant(riesz(-1)), InvalidArgument);
}
