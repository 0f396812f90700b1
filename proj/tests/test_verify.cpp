#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sharpcode/verify.hpp"

using namespace sharpcode;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SphericalCode antipodal_pair() {
    SphericalCode C;
    C.name = "pair";
    C.n = 2;
    C.tau = 1;
    C.push({0, 1});
    C.push({0, -1});
    return C;
}

Potential constant(double c) {
    Potential h;
    h.spec = "const";
    h.value_fn = [c](double) { return c; };
    h.derivative_fn = [](double) { return 0.0; };
    return h;
}

}  // namespace

TEST_CASE("moments by direct summation") {
    CHECK_THAT(moment(*build_code("cross_polytope(3)"), 4, Mode::full), WithinAbs(21.0, 1e-12));
    CHECK_THAT(moment(*build_code("simplex(3)"), 3, Mode::full), WithinAbs(80.0 / 9, 1e-12));
    for (int n : {3, 6, 11}) {
        const auto C = build_code("cross_polytope(" + std::to_string(n) + ")");
        for (int i = 1; i <= 3; ++i) CHECK(std::fabs(moment(*C, i, Mode::full)) <= 1e-9 * double(C->N * C->N));
    }
}

TEST_CASE("design certificates") {
    const auto pass_all = [](const std::vector<DegreeCheck>& d) {
        return std::all_of(d.begin(), d.end(), [](auto& c) { return c.pass; });
    };
    IndexSet T = IndexSet::range(1, 5).add(7).add(8);
    CHECK(pass_all(design_certificate(*build_code("icosahedron"), T, Mode::full)));
    CHECK(pass_all(design_certificate(*build_code("e8_240"), IndexSet::skip(4), Mode::full)));
    CHECK(pass_all(design_certificate(*build_code("simplex(3)"), IndexSet::range(1, 2), Mode::full)));
    const auto d = design_certificate(*build_code("simplex(3)"), IndexSet::range(1, 3), Mode::full);
    CHECK(d[0].pass);
    CHECK(d[1].pass);
    CHECK_FALSE(d[2].pass);
    // Icosahedron fails at 6, the first degree with an invariant harmonic.
    CHECK_FALSE(design_certificate(*build_code("icosahedron"), IndexSet::range(6, 6), Mode::full)[0].pass);
    CHECK(pass_all(design_certificate(*build_code("c_22_275_4"), IndexSet::range(1, 4), Mode::sampled)));
}

TEST_CASE("distance distributions") {
    SECTION("north pole of the octahedron") {
        const auto d = distance_distribution({0, 0, 1}, *build_code("cross_polytope(3)"));
        REQUIRE(d.entries.size() == 3);
        CHECK(d.entries[0].value == -1);
        CHECK(d.entries[0].count == 1);
        CHECK(d.entries[1].count == 4);
        CHECK(d.entries[2].count == 1);
        CHECK(d.total() == 6);
    }
    SECTION("c_23_4600_7 witness") {
        const auto C = build_code("c_23_4600_7");
        const auto d = distance_distribution(witness_point(*C, Role::case_i), *C);
        const double a = std::sqrt(5.0) / 5, b = std::sqrt(5.0) / 15;
        CHECK(d.count_at(-a) == 275);
        CHECK(d.count_at(-b) == 2025);
        CHECK(d.count_at(b) == 2025);
        CHECK(d.count_at(a) == 275);
    }
    SECTION("600-cell code point, self excluded") {
        const auto C = build_code("cell_600");
        const auto d = distance_distribution(C->point_vec(7), *C, 1e-9, true);
        CHECK(d.total() == 119);
        CHECK(d.entries.size() == 8);
        CHECK(d.count_at(0) == 30);
    }
    CHECK_THROWS_AS(distance_distribution({1, 1, 0}, *build_code("cube")), InvalidArgument);
    CHECK_THROWS_AS(cluster({0.0, 1.5e-9, 3.5e-9}, 1e-9), ClusteringAmbiguity);
}

TEST_CASE("potential sums") {
    const auto I = build_code("icosahedron");
    CHECK(potential_value(constant(1), I->point_vec(0), *I) == 12);
    SECTION("icosahedron face centre") {
        const auto h = riesz(1);
        const auto& r = skip1add2(3, 3);
        double want = 0;
        for (double b : r.nodes) want += 3 * h(b);
        CHECK_THAT(potential_value(h, witness_point(*I, Role::second_level), *I), WithinRel(want, 1e-12));
    }
    SECTION("E8 second-level witness") {
        const auto h = exp_potential(1);
        const double s = std::sqrt(2.0);
        const double want = 14 * h(-s / 2) + 64 * h(-s / 4) + 84 * h(0) + 64 * h(s / 4) + 14 * h(s / 2);
        const auto C = build_code("e8_240");
        CHECK_THAT(potential_value(h, witness_point(*C, Role::second_level), *C), WithinRel(want, 1e-12));
    }
    CHECK_THROWS_AS(potential_value(riesz(1), I->point_vec(3), *I), SingularEvaluation);
}

TEST_CASE("bound values") {
    CHECK_THAT(pulb_value(pulb_case_i(5, 3), constant(2.5), 16), WithinRel(40.0, 1e-14));
    SECTION("case (ii) bound for E8") {
        const auto h = riesz(2);
        const double want = h(-1) + 56 * h(-0.5) + 126 * h(0) + 56 * h(0.5);  // h(1) term is infinite
        const auto& r = pulb_case_ii(8, 7);
        CHECK_THAT(energy_bound_per_point(levenshtein_1_over_N(8, 240, 7), h, 240), WithinRel(want, 1e-12));
        CHECK(r.nodes.back() == 1);
    }
    SECTION("case (i) bound for c_22_891_5") {
        const auto h = riesz(1);
        const double a = 1 / std::sqrt(8.0);
        CHECK_THAT(pulb_value(pulb_case_i(22, 5), h, 891), WithinRel(162 * h(-a) + 567 * h(0) + 162 * h(a), 1e-12));
    }
}

TEST_CASE("energy") {
    const auto h = riesz(1);
    SECTION("two antipodal points") {
        CHECK_THAT(energy(antipodal_pair(), h, Mode::full).energy, WithinRel(2 * h(-1), 1e-15));
    }
    SECTION("c_6_27_4") {
        const auto e = energy(*build_code("c_6_27_4"), h, Mode::full);
        CHECK_THAT(e.per_point, WithinRel(10 * h(-0.5) + 16 * h(0.25), 1e-12));
    }
    SECTION("c_23_552_5, full and sampled") {
        const auto C = build_code("c_23_552_5");
        const double want = h(-1) + 275 * h(-0.2) + 275 * h(0.2);
        CHECK_THAT(energy(*C, h, Mode::full).per_point, WithinRel(want, 1e-12));
        const auto s = energy(*C, h, Mode::sampled);
        CHECK_THAT(s.per_point, WithinRel(want, 1e-12));
        CHECK(s.distribution.size() == 3);
    }
    SECTION("sampled mode rejects codes with point-dependent distributions") {
        SphericalCode C;
        C.name = "irregular";
        C.n = 2;
        for (double a : {0.0, 1.5, 3.5}) C.push({std::cos(a), std::sin(a)});
        CHECK_THROWS_AS(energy(C, h, Mode::sampled, 50), ConstructionError);
        CHECK_NOTHROW(energy(*build_code("cube"), h, Mode::sampled, 50));
    }
}

TEST_CASE("averages of low-degree polynomials over designs") {
    // U_f(x, C) = f_0 N for deg f <= strength, at any x.
    std::mt19937_64 rng(7);
    const Poly<double> f{0.5, -1.25, 2.0, 0.75, -0.5, 0.125, 1.5, -0.25};
    for (const char* name : {"icosahedron", "e8_240", "c_22_275_4", "c_23_552_5", "c_23_4600_7"}) {
        const auto C = build_code(name);
        Poly<double> g;
        for (int i = 0; i <= std::min(C->tau, f.degree()); ++i) g = g + Poly<double>::monomial(i, f[i]);
        const double f0 = integrate(C->n, g);
        for (int s = 0; s < 10; ++s) {
            const Vec x = random_unit(C->n, rng);
            const double v = potential_sum([&](double t) { return g(t); }, x, *C);
            CHECK_THAT(v, WithinAbs(f0 * double(C->N), 1e-8 * double(C->N)));
        }
    }
}

TEST_CASE("minimum search") {
    SECTION("two antipodal points: minimum on the equator") {
        const auto h = riesz(1);
        const auto r = global_min_search(antipodal_pair(), h, 20);
        CHECK_THAT(r.value, WithinRel(2 * h(0), 1e-10));
        CHECK_THAT(r.point[1], WithinAbs(0.0, 1e-5));
    }
    SECTION("octahedron") {
        const auto h = riesz(1);
        const double a = 1 / std::sqrt(3.0);
        const auto r = global_min_search(*build_code("cross_polytope(3)"), h, 50);
        CHECK_THAT(r.value, WithinRel(3 * h(-a) + 3 * h(a), 1e-10));
    }
    SECTION("deterministic for a fixed seed") {
        const auto C = build_code("c_5_16_3");
        const auto a = global_min_search(*C, riesz(1), 10, 9);
        const auto b = global_min_search(*C, riesz(1), 10, 9);
        CHECK(a.value == b.value);
        CHECK(a.point == b.point);
    }
}

TEST_CASE("attainment checks") {
    CheckOptions quick;
    quick.restarts = 4;
    SECTION("c_22_100_3 at the first level") {
        const auto r = attainment_check("c_22_100_3", BoundLevel::first_i, riesz(1), quick);
        CHECK(r.attained);
        CHECK(r.search_ok);
        const double a = 1 / std::sqrt(22.0);
        CHECK(r.witnesses[0].distribution.count_at(-a) == 50);
        CHECK(r.witnesses[0].distribution.count_at(a) == 50);
    }
    SECTION("refusals for marked rows") {
        CHECK_THROWS_AS(attainment_check("c_5_16_3", BoundLevel::first_ii, riesz(-1), quick), Refused);
        CHECK_THROWS_AS(attainment_check("icosahedron", BoundLevel::first_i, riesz(1), quick), Refused);
        CHECK_THROWS_AS(attainment_check("cube", BoundLevel::second, riesz(1), quick), Refused);
        CHECK_THROWS_AS(attainment_check("e8_240", BoundLevel::cell600, trunc_exp(1), quick), Refused);
    }
    SECTION("Leech second level") {
        CheckOptions none;
        none.search = false;
        const auto r = attainment_check("leech_196560", BoundLevel::second, exp_potential(1), none);
        CHECK(r.attained);
        const double want[] = {552, 11178, 48600, 75900, 48600, 11178, 552};
        const auto& e = r.witnesses[0].distribution.entries;
        REQUIRE(e.size() == 7);
        for (int i = 0; i < 7; ++i) CHECK(e[i].count == want[i]);
    }
    SECTION("case (ii) at sampled code points") {
        const auto r = attainment_check("c_22_275_4", BoundLevel::first_ii, riesz(-1), quick);
        CHECK(r.attained);
        CHECK(r.witnesses.size() == 5);
    }
    SECTION("potential with the wrong sign for the level") {
        CHECK_THROWS_AS(attainment_check("e8_240", BoundLevel::first_ii, riesz(1), quick), InvalidArgument);
    }
    CHECK_THROWS_AS(parse_level("third"), InvalidArgument);
}

TEST_CASE("level sets at minima") {
    SECTION("icosahedron: equilateral triangle") {
        const auto C = build_code("icosahedron");
        const auto f = facet_checks(*C, witness_point(*C, Role::second_level), skip1add2(3, 3));
        CHECK(f.pass);
        CHECK(f.top_size == 3);
        REQUIRE(f.spectrum.size() == 1);
        CHECK_THAT(f.spectrum[0], WithinAbs(-0.5, 1e-12));
    }
    SECTION("E8: 7-dimensional cross-polytope") {
        const auto C = build_code("e8_240");
        const auto f = facet_checks(*C, witness_point(*C, Role::second_level), skip1add2(8, 4));
        CHECK(f.pass);
        CHECK(f.top_size == 14);
        REQUIRE(f.spectrum.size() == 2);
        CHECK_THAT(f.spectrum[0], WithinAbs(-1.0, 1e-12));
        CHECK_THAT(f.spectrum[1], WithinAbs(0.0, 1e-12));
    }
    SECTION("simplex: opposite face") {
        const auto C = build_code("simplex(5)");
        const auto f = facet_checks(*C, witness_point(*C, Role::case_i), pulb_case_i(5, 2));
        CHECK(f.pass);
        CHECK(f.top_size == 5);
        CHECK_THAT(f.max_ip, WithinAbs(0.2, 1e-12));
    }
    SECTION("a non-minimum fails the centroid test") {
        const auto C = build_code("cube");
        const auto f = facet_checks(*C, normalized({0.1, 0.2, 1}), pulb_case_i(3, 3));
        CHECK_FALSE(f.pass);
        CHECK_FALSE(f.max_ok);
    }
}
