#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "sharpcode/codes.hpp"

using namespace sharpcode;
using Catch::Matchers::WithinAbs;

namespace {

// Brute-force pair spectrum rounded to 1e-9.
std::map<long long, std::size_t> pair_spectrum(const SphericalCode& C) {
    std::map<long long, std::size_t> m;
    for (std::size_t i = 0; i < C.N; ++i)
        for (std::size_t j = i + 1; j < C.N; ++j) ++m[std::llround(dot(C.point(i), C.point(j), C.n) * 1e9)];
    return m;
}

}  // namespace

TEST_CASE("extended Golay code") {
    const auto& G = golay_extended();
    REQUIRE(G.words.size() == 4096);
    const std::map<int, int> want{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
    CHECK(G.weight_distribution() == want);
    std::set<std::uint32_t> distinct(G.words.begin(), G.words.end());
    CHECK(distinct.size() == 4096);
    // Linear: closed under addition.
    for (std::size_t i = 0; i < 4096; i += 97)
        for (std::size_t j = 0; j < 4096; j += 89) CHECK(distinct.count(G.words[i] ^ G.words[j]));
}

TEST_CASE("punctured Golay code") {
    const auto& g = golay23();
    const auto w7 = words_of_weight(g, 7);
    CHECK(w7.size() == 253);
    CHECK(std::count_if(w7.begin(), w7.end(), [](auto w) { return bit(w, 0); }) == 77);
    for (auto w : g.words) CHECK(w < (1u << 23));
}

TEST_CASE("catalog sizes") {
    const std::vector<std::tuple<std::string, int, std::size_t>> want{
        {"ngon(7)", 2, 7},           {"simplex(5)", 5, 6},     {"cross_polytope(4)", 4, 8}, {"cube", 3, 8},
        {"icosahedron", 3, 12},      {"dodecahedron", 3, 20},  {"c_5_16_3", 5, 16},         {"c_6_27_4", 6, 27},
        {"c_7_56_5", 7, 56},         {"e8_240", 8, 240},       {"c_21_112_3", 21, 112},     {"c_21_162_3", 21, 162},
        {"c_22_100_3", 22, 100},     {"c_22_275_4", 22, 275},  {"c_22_891_5", 22, 891},     {"c_23_552_5", 23, 552},
        {"c_23_4600_7", 23, 4600},   {"leech_196560", 24, 196560}, {"cell_600", 4, 120}};
    for (const auto& [name, n, N] : want) {
        CAPTURE(name);
        const auto C = build_code(name);
        CHECK(C->n == n);
        CHECK(C->N == N);
        CHECK(C->coords.size() == N * std::size_t(n));
    }
}

TEST_CASE("pair spectra by brute force") {
    SECTION("icosahedron") {
        const auto s = pair_spectrum(*build_code("icosahedron"));
        const long long q = std::llround(1e9 / std::sqrt(5.0));
        CHECK(s == std::map<long long, std::size_t>{{-1000000000, 6}, {-q, 30}, {q, 30}});
    }
    SECTION("c_22_275_4 is two-distance") {
        const auto s = pair_spectrum(*build_code("c_22_275_4"));
        CHECK(s == std::map<long long, std::size_t>{{-250000000, 275 * 112 / 2}, {166666667, 275 * 162 / 2}});
    }
    SECTION("cell_600 per-point frequencies") {
        const auto C = build_code("cell_600");
        for (std::size_t i = 0; i < C->N; i += 17) {
            std::map<long long, int> m;
            for (std::size_t j = 0; j < C->N; ++j) ++m[std::llround(dot(C->point(i), C->point(j), 4) * 1e9)];
            std::vector<int> counts;
            for (auto& [k, c] : m) counts.push_back(c);
            CHECK(counts == std::vector<int>{1, 12, 20, 12, 30, 12, 20, 12, 1});
        }
    }
}

TEST_CASE("codes consist of distinct unit vectors") {
    for (const char* name : {"c_21_112_3", "c_21_162_3", "c_22_100_3", "c_22_891_5", "e8_240", "cell_600"}) {
        const auto C = build_code(name);
        std::set<std::vector<long long>> seen;
        for (std::size_t i = 0; i < C->N; ++i) {
            CHECK_THAT(dot(C->point(i), C->point(i), C->n), WithinAbs(1.0, 1e-12));
            std::vector<long long> key;
            for (int j = 0; j < C->n; ++j) key.push_back(std::llround(C->point(i)[j] * 1e9));
            seen.insert(key);
        }
        CHECK(seen.size() == C->N);
    }
}

TEST_CASE("Leech construction: sampled distributions and antipodality") {
    const auto L = build_code("leech_196560");
    std::set<std::vector<long long>> pts;
    for (std::size_t i = 0; i < L->N; ++i) {
        std::vector<long long> key;
        for (int j = 0; j < 24; ++j) key.push_back(std::llround(L->point(i)[j] * std::sqrt(32.0)));
        pts.insert(key);
    }
    CHECK(pts.size() == 196560);
    for (auto key : {*pts.begin(), *pts.rbegin()}) {
        for (auto& x : key) x = -x;
        CHECK(pts.count(key));
    }
}

TEST_CASE("derived kissing configurations") {
    SECTION("cross-polytope equator") {
        const auto C = build_code("cross_polytope(4)");
        const auto d = derive_kissing(*C, 0, 0.0);
        CHECK(d.code.N == 6);
        CHECK(d.code.n == 3);
        const auto s = pair_spectrum(d.code);
        CHECK(s == std::map<long long, std::size_t>{{-1000000000, 3}, {0, 12}});
    }
    SECTION("reflection sends the apex to the last axis") {
        const auto C = build_code("e8_240");
        const Vec a = C->point_vec(5);
        const Reflection R(a);
        const Vec y = R.apply(a);
        for (int i = 0; i < 7; ++i) CHECK_THAT(y[i], WithinAbs(0.0, 1e-15));
        CHECK_THAT(y[7], WithinAbs(1.0, 1e-15));
    }
    SECTION("E8 neighbours of a point form the 56-point code") {
        const auto d = derive_kissing(*build_code("e8_240"), 0, 0.5);
        CHECK(d.code.N == 56);
        CHECK(pair_spectrum(d.code).size() == 3);
    }
    CHECK_THROWS_AS(derive_kissing(*build_code("cube"), 99, 0.0), InvalidArgument);
}

TEST_CASE("witnesses are unit vectors with the listed roles") {
    CHECK(build_code("icosahedron")->find_witness(Role::second_level));
    CHECK_FALSE(build_code("icosahedron")->find_witness(Role::case_i));
    CHECK_THROWS_AS(witness_point(*build_code("icosahedron"), Role::case_i), Refused);
    const Vec w = witness_point(*build_code("c_23_552_5"), Role::case_i);
    CHECK_THAT(dot(w, w), WithinAbs(1.0, 1e-15));
    const Vec p = witness_point(*build_code("e8_240"), Role::case_ii);
    CHECK(p == build_code("e8_240")->point_vec(0));
}

TEST_CASE("catalog names") {
    CHECK(canonical_name("ngon:5") == "ngon(5)");
    CHECK(canonical_name("simplex(03)") == "simplex(3)");
    CHECK(canonical_name("leech_196560") == "leech_196560");
    CHECK(build_code("ngon:5") == build_code("ngon(5)"));
    CHECK_THROWS_AS(build_code("tetrahedron"), InvalidArgument);
    CHECK_THROWS_AS(build_code("ngon(1)"), InvalidArgument);
    CHECK_THROWS_AS(build_code("simplex(30)"), InvalidArgument);
    CHECK(catalog_names().size() == 19);
}

TEST_CASE("point export") {
    const auto C = build_code("cross_polytope(3)");
    SECTION("csv") {
        std::ostringstream s;
        export_points(*C, "csv", s);
        std::istringstream in(s.str());
        std::string line;
        std::size_t rows = 0;
        while (std::getline(in, line)) {
            CHECK(std::count(line.begin(), line.end(), ',') == 2);
            ++rows;
        }
        CHECK(rows == 6);
        CHECK(s.str().rfind("1,0,0\n", 0) == 0);
    }
    SECTION("json") {
        std::ostringstream s;
        export_points(*C, "json", s);
        const auto j = nlohmann::json::parse(s.str());
        CHECK(j["schema"] == "sharpcode/1");
        CHECK(j["N"] == 6);
        CHECK(j["points"].size() == 6);
        CHECK(j["points"][3][0] == -1.0);
    }
    SECTION("round trip at full precision") {
        const auto I = build_code("icosahedron");
        std::ostringstream s;
        export_points(*I, "csv", s);
        std::istringstream in(s.str());
        double x;
        char comma;
        in >> x;
        CHECK(x == I->point(0)[0]);
        in >> comma >> x;
        CHECK(x == I->point(0)[1]);
    }
    std::ostringstream s;
    CHECK_THROWS_AS(export_points(*C, "xml", s), InvalidArgument);
}
