#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "sharpcode/orthopoly.hpp"

using namespace sharpcode;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("measure moments agree with numerical integration") {
    for (int n : {2, 3, 4, 8, 23, 24})
        for (int j = 0; j <= 12; ++j) {
            const double want = oracle::integrate(n, [j](double t) { return std::pow(t, j); });
            CHECK_THAT(measure_moment<double>(n, j), WithinAbs(want, 1e-10));
        }
    CHECK_THROWS_AS(measure_moment<double>(1, 2), InvalidArgument);
    CHECK_THROWS_AS(measure_moment<double>(3, -1), InvalidArgument);
}

TEST_CASE("Gegenbauer family in low dimensions") {
    SECTION("n = 2 gives Chebyshev polynomials") {
        for (int k = 0; k <= 10; ++k)
            for (double th : {0.1, 0.7, 2.0, 3.0})
                CHECK_THAT(gegenbauer_eval(2, k, std::cos(th)), WithinAbs(std::cos(k * th), 1e-13));
    }
    SECTION("n = 3 gives Legendre polynomials") {
        for (double t : {-0.9, -0.2, 0.4, 0.95}) {
            CHECK_THAT(gegenbauer_eval(3, 2, t), WithinAbs((3 * t * t - 1) / 2, 1e-14));
            CHECK_THAT(gegenbauer_eval(3, 3, t), WithinAbs((5 * t * t * t - 3 * t) / 2, 1e-14));
        }
    }
}

TEST_CASE("Gegenbauer polynomials are orthogonal with the stated norms") {
    for (int n : {3, 4, 8, 24})
        for (int i = 0; i <= 8; ++i)
            for (int j = i; j <= 8; ++j) {
                const double ip = oracle::integrate(
                    n, [&](double t) { return gegenbauer_eval(n, i, t) * gegenbauer_eval(n, j, t); });
                const double want = i == j ? gegenbauer_norm_sq<double>(n, i) : 0.0;
                CHECK_THAT(ip, WithinAbs(want, 1e-9));
            }
}

TEST_CASE("every family is normalized to 1 at t = 1") {
    for (int n : {3, 5, 24})
        for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
            for (int i = 0; i <= 12; ++i) CHECK_THAT(jacobi_eval(basis(n), a, b, i, 1.0), WithinAbs(1.0, 1e-12));
}

TEST_CASE("adjacent families are orthogonal for their weights") {
    const int n = 5;
    for (auto [a, b] : {std::pair{1, 0}, {0, 1}, {1, 1}})
        for (int i = 0; i <= 5; ++i)
            for (int j = i + 1; j <= 5; ++j) {
                const double ip = oracle::integrate(n, [&, a = a, b = b](double t) {
                    return std::pow(1 - t, a) * std::pow(1 + t, b) * jacobi_eval(basis(n), a, b, i, t) *
                           jacobi_eval(basis(n), a, b, j, t);
                });
                CHECK_THAT(ip, WithinAbs(0.0, 1e-9));
            }
}

TEST_CASE("recurrence evaluation, stored polynomials and gegenbauer_all agree") {
    for (int n : {3, 8, 24}) {
        std::vector<double> all(13);
        for (double t : {-1.0, -0.37, 0.0, 0.61, 1.0}) {
            gegenbauer_all(n, 12, t, all.data());
            for (int k = 0; k <= 12; ++k) {
                CHECK_THAT(all[k], WithinAbs(gegenbauer_eval(n, k, t), 1e-12));
                CHECK_THAT(double(basis(n).gegenbauer(k)(Real(t))), WithinAbs(all[k], 1e-11));
            }
        }
    }
}

TEST_CASE("expansion in the Gegenbauer basis round-trips") {
    const Poly<double> f{0.3, -1.0, 2.5, 0.0, -0.75, 1.25};
    for (int n : {3, 7, 24}) {
        const auto c = gegenbauer_expand(n, f);
        const auto g = gegenbauer_synthesize(n, c);
        for (int i = 0; i <= f.degree(); ++i) CHECK_THAT(g[i], WithinAbs(f[i], 1e-12));
        CHECK_THAT(c[0], WithinAbs(integrate(n, f), 1e-14));
    }
}

TEST_CASE("Jacobi zeros are simple, interior and interlacing") {
    for (int n : {3, 8, 24})
        for (auto [a, b] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}}) {
            std::vector<Real> prev;
            for (int k = 1; k <= 8; ++k) {
                const auto z = jacobi_zeros(n, a, b, k);
                REQUIRE(z.size() == std::size_t(k));
                for (std::size_t i = 0; i < z.size(); ++i) {
                    CHECK(z[i] > -1);
                    CHECK(z[i] < 1);
                    CHECK(std::fabs(double(jacobi_eval(basis(n), a, b, k, z[i]))) < 1e-12);
                    if (i) CHECK(z[i] > z[i - 1]);
                    if (!prev.empty() && i < prev.size()) CHECK(z[i] < prev[i]);
                    if (!prev.empty() && i > 0) CHECK(z[i] > prev[i - 1]);
                }
                prev = z;
            }
        }
}

TEST_CASE("root isolation reports a bracket without a sign change") {
    const Poly<double> f{1.0, 0.0, 1.0};  // no real roots
    CHECK_THROWS_AS(isolate_roots(f, {{-1, 1}}), MissingRoot);
}
