#pragma once

// Catalog of spherical codes built from explicit coordinates, with witness
// points for the bounds they attain.  Every code is validated on
// construction: unit norms, inner-product spectrum, and per-point distance
// distribution (all points up to N = 5000, 20 sampled points beyond).

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "golay.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace sharpcode {

using Vec = std::vector<double>;

inline double dot(const double* a, const double* b, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}
inline double dot(const Vec& a, const Vec& b) { return dot(a.data(), b.data(), int(a.size())); }
inline Vec normalized(Vec v) {
    const double r = std::sqrt(dot(v, v));
    for (auto& x : v) x /= r;
    return v;
}

enum class Role { case_i, case_ii, second_level, cell600 };

inline std::string to_string(Role r) {
    switch (r) {
        case Role::case_i: return "case_i";
        case Role::case_ii: return "case_ii";
        case Role::second_level: return "second_level";
        case Role::cell600: return "cell600";
    }
    return "?";
}

struct Witness {
    Role role;
    Vec x;
};

struct Level {
    double value;
    std::size_t count;
};

// Expected shape of the top level set seen from a minimum.
struct FacetSpec {
    std::size_t size = 0;
    std::vector<double> spectrum;  // recentered pairwise inner products; empty = not checked
    std::string type;
};

struct SphericalCode {
    std::string name;
    int n = 0;
    std::size_t N = 0;
    Vec coords;  // row-major N x n
    int tau = 0;
    IndexSet T;  // degrees with vanishing moments that are checked
    std::vector<double> expected_ips;
    std::vector<Witness> witnesses;

    bool sharp = false;               // listed in the energy table
    std::vector<Level> distribution;  // per-point, self excluded
    FacetSpec facet;

    const double* point(std::size_t i) const { return coords.data() + i * std::size_t(n); }
    Vec point_vec(std::size_t i) const { return Vec(point(i), point(i) + n); }
    void push(const Vec& v) {
        coords.insert(coords.end(), v.begin(), v.end());
        ++N;
    }
    const Witness* find_witness(Role r) const {
        for (const auto& w : witnesses)
            if (w.role == r) return &w;
        return nullptr;
    }
};

// Householder reflection sending a unit vector a to e_n.
struct Reflection {
    Vec v;  // empty when a == e_n
    double vv = 0;

    explicit Reflection(const Vec& a) {
        v = a;
        v.back() -= 1;
        vv = dot(v, v);
        if (vv < 1e-28) v.clear();
    }
    Vec apply(const Vec& x) const {
        if (v.empty()) return x;
        Vec y = x;
        const double f = 2 * dot(v, x) / vv;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= f * v[i];
        return y;
    }
    // Coordinates in the orthogonal complement of a (drops the last entry).
    Vec project(const Vec& x) const {
        Vec y = apply(x);
        y.pop_back();
        return y;
    }
};

struct DerivedCode {
    SphericalCode code;
    Reflection map;
    Vec apex;
    double s;
};

// Points at inner product s from the apex, recentred and rescaled onto the
// unit sphere of the apex's orthogonal complement.
inline DerivedCode derive_kissing(const SphericalCode& parent, std::size_t apex, double s) {
    if (apex >= parent.N) throw InvalidArgument("derive_kissing: apex index out of range");
    const Vec a = parent.point_vec(apex);
    DerivedCode d{SphericalCode{}, Reflection(a), a, s};
    d.code.n = parent.n - 1;
    const double r = std::sqrt(1 - s * s);
    for (std::size_t i = 0; i < parent.N; ++i) {
        const double* x = parent.point(i);
        if (std::fabs(dot(x, a.data(), parent.n) - s) > 1e-9) continue;
        Vec y(x, x + parent.n);
        for (int j = 0; j < parent.n; ++j) y[j] = (y[j] - s * a[j]) / r;
        d.code.push(d.map.project(y));
    }
    if (d.code.N == 0) throw ConstructionError("derive_kissing: empty selection");
    return d;
}

namespace detail {

inline std::vector<Level> levels(std::initializer_list<std::pair<double, std::size_t>> l) {
    std::vector<Level> out;
    for (auto [v, c] : l) out.push_back({v, c});
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.value < b.value; });
    return out;
}

inline std::vector<double> values_of(const std::vector<Level>& l) {
    std::vector<double> v;
    for (auto& x : l) v.push_back(x.value);
    return v;
}

// Per-point distribution of inner products (self excluded) against the
// expected levels; returns an error message or "".
inline std::string check_point(const SphericalCode& C, std::size_t i) {
    std::vector<std::size_t> counts(C.distribution.size(), 0);
    const double* x = C.point(i);
    for (std::size_t j = 0; j < C.N; ++j) {
        if (j == i) continue;
        const double ip = dot(x, C.point(j), C.n);
        bool hit = false;
        for (std::size_t l = 0; l < C.distribution.size(); ++l)
            if (std::fabs(ip - C.distribution[l].value) <= 1e-9) {
                ++counts[l];
                hit = true;
                break;
            }
        if (!hit)
            return "inner product " + std::to_string(ip) + " between points " + std::to_string(i) + " and " +
                   std::to_string(j) + " is not in the expected spectrum";
    }
    for (std::size_t l = 0; l < counts.size(); ++l)
        if (counts[l] != C.distribution[l].count)
            return "point " + std::to_string(i) + " has " + std::to_string(counts[l]) + " neighbours at " +
                   std::to_string(C.distribution[l].value) + ", expected " +
                   std::to_string(C.distribution[l].count);
    return "";
}

}  // namespace detail

inline void validate(const SphericalCode& C) {
    const auto fail = [&](const std::string& m) { throw ConstructionError(C.name + ": " + m); };
    if (C.coords.size() != C.N * std::size_t(C.n)) fail("coordinate array has the wrong size");
    for (std::size_t i = 0; i < C.N; ++i) {
        const double r = dot(C.point(i), C.point(i), C.n);
        if (std::fabs(r - 1) > 2e-12) fail("point " + std::to_string(i) + " is not a unit vector");
    }
    std::vector<std::size_t> sample;
    if (C.N <= 5000) {
        for (std::size_t i = 0; i < C.N; ++i) sample.push_back(i);
    } else {
        std::mt19937_64 rng(42);
        for (int s = 0; s < 20; ++s) sample.push_back(std::size_t(rng() % C.N));
    }
    std::vector<std::string> errs(sample.size());
    for_blocks(sample.size(), 64, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t k = b; k < e; ++k) errs[k] = detail::check_point(C, sample[k]);
    });
    for (auto& e : errs)
        if (!e.empty()) fail(e);
    for (const auto& w : C.witnesses)
        if (std::size_t(C.n) != w.x.size() || std::fabs(dot(w.x, w.x) - 1) > 1e-12)
            fail("witness (" + to_string(w.role) + ") is not a unit vector in R^" + std::to_string(C.n));
}

namespace detail {

inline const double phi = std::numbers::phi;

inline SphericalCode ngon(int N) {
    if (N < 2) throw InvalidArgument("ngon: N must be >= 2");
    SphericalCode C;
    C.name = "ngon(" + std::to_string(N) + ")";
    C.n = 2;
    C.tau = N - 1;
    C.T = IndexSet::range(1, N - 1);
    C.sharp = true;
    for (int j = 0; j < N; ++j) {
        const double th = 2 * std::numbers::pi * j / N;
        C.push({std::cos(th), std::sin(th)});
    }
    std::map<long long, Level> lv;
    for (int j = 1; j < N; ++j) {
        const double v = std::cos(2 * std::numbers::pi * j / N);
        auto& l = lv[std::llround(v * 1e9)];
        l.value = v;
        ++l.count;
    }
    for (auto& [k, l] : lv) C.distribution.push_back(l);
    const double th = std::numbers::pi / N;
    C.witnesses.push_back({Role::case_i, {std::cos(th), std::sin(th)}});
    C.facet = {2, {-1}, "arc endpoints"};
    return C;
}

inline SphericalCode simplex(int n) {
    if (n < 2) throw InvalidArgument("simplex: n must be >= 2");
    SphericalCode C;
    C.name = "simplex(" + std::to_string(n) + ")";
    C.n = n;
    C.tau = 2;
    C.T = IndexSet::range(1, 2);
    C.sharp = true;
    const double a = (1 - std::sqrt(double(n + 1))) / n;
    std::vector<Vec> raw;
    for (int i = 0; i < n; ++i) {
        Vec v(n, 0.0);
        v[i] = 1;
        raw.push_back(v);
    }
    raw.push_back(Vec(n, a));
    Vec c(n, 0.0);
    for (auto& v : raw)
        for (int i = 0; i < n; ++i) c[i] += v[i] / (n + 1);
    for (auto& v : raw) {
        for (int i = 0; i < n; ++i) v[i] -= c[i];
        C.push(normalized(v));
    }
    C.distribution = levels({{-1.0 / n, std::size_t(n)}});
    Vec w = C.point_vec(0);
    for (auto& x : w) x = -x;
    C.witnesses.push_back({Role::case_i, w});
    C.facet = {std::size_t(n), {-1.0 / (n - 1)}, "simplex"};
    return C;
}

inline SphericalCode cross_polytope(int n) {
    if (n < 2) throw InvalidArgument("cross_polytope: n must be >= 2");
    SphericalCode C;
    C.name = "cross_polytope(" + std::to_string(n) + ")";
    C.n = n;
    C.tau = 3;
    C.T = IndexSet::range(1, 3);
    C.sharp = true;
    for (int s : {1, -1})
        for (int i = 0; i < n; ++i) {
            Vec v(n, 0.0);
            v[i] = s;
            C.push(v);
        }
    C.distribution = levels({{-1.0, 1}, {0.0, std::size_t(2 * n - 2)}});
    C.witnesses.push_back({Role::case_i, Vec(n, 1 / std::sqrt(double(n)))});
    C.facet = {std::size_t(n), {-1.0 / (n - 1)}, "simplex"};
    return C;
}

inline SphericalCode cube() {
    SphericalCode C;
    C.name = "cube";
    C.n = 3;
    C.tau = 3;
    C.T = IndexSet::range(1, 3);
    const double r = 1 / std::sqrt(3.0);
    for (int m = 0; m < 8; ++m) C.push({(m & 1) ? -r : r, (m & 2) ? -r : r, (m & 4) ? -r : r});
    C.distribution = levels({{-1.0, 1}, {-1.0 / 3, 3}, {1.0 / 3, 3}});
    C.witnesses.push_back({Role::case_i, {0, 0, 1}});
    C.facet = {4, {-1, 0}, "square"};
    return C;
}

inline SphericalCode icosahedron() {
    SphericalCode C;
    C.name = "icosahedron";
    C.n = 3;
    C.tau = 5;
    C.T = IndexSet::skip(3);
    C.sharp = true;
    const double r = std::sqrt(1 + phi * phi);
    for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
            const Vec base{0, s1 / r, s2 * phi / r};
            for (int c = 0; c < 3; ++c) C.push({base[(3 - c) % 3], base[(4 - c) % 3], base[(5 - c) % 3]});
        }
    const double q = 1 / std::sqrt(5.0);
    C.distribution = levels({{-1.0, 1}, {-q, 5}, {q, 5}});
    // Face centre: first mutually adjacent triple in construction order.
    for (std::size_t i = 0; i < C.N && C.witnesses.empty(); ++i)
        for (std::size_t j = i + 1; j < C.N && C.witnesses.empty(); ++j)
            for (std::size_t k = j + 1; k < C.N && C.witnesses.empty(); ++k) {
                const double* a = C.point(i);
                const double* b = C.point(j);
                const double* c = C.point(k);
                if (std::fabs(dot(a, b, 3) - q) < 1e-9 && std::fabs(dot(a, c, 3) - q) < 1e-9 &&
                    std::fabs(dot(b, c, 3) - q) < 1e-9)
                    C.witnesses.push_back({Role::second_level, normalized({a[0] + b[0] + c[0], a[1] + b[1] + c[1],
                                                                           a[2] + b[2] + c[2]})});
            }
    C.facet = {3, {-0.5}, "equilateral triangle"};
    return C;
}

inline SphericalCode dodecahedron() {
    const SphericalCode I = icosahedron();
    SphericalCode C;
    C.name = "dodecahedron";
    C.n = 3;
    C.tau = 5;
    C.T = IndexSet::skip(3);
    const double q = 1 / std::sqrt(5.0);
    for (std::size_t i = 0; i < I.N; ++i)
        for (std::size_t j = i + 1; j < I.N; ++j)
            for (std::size_t k = j + 1; k < I.N; ++k) {
                const double* a = I.point(i);
                const double* b = I.point(j);
                const double* c = I.point(k);
                if (std::fabs(dot(a, b, 3) - q) < 1e-9 && std::fabs(dot(a, c, 3) - q) < 1e-9 &&
                    std::fabs(dot(b, c, 3) - q) < 1e-9)
                    C.push(normalized({a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]}));
            }
    const double r5 = std::sqrt(5.0) / 3;
    C.distribution = levels({{-1.0, 1}, {-r5, 3}, {-1.0 / 3, 6}, {1.0 / 3, 6}, {r5, 3}});
    C.witnesses.push_back({Role::second_level, I.point_vec(0)});
    const double c72 = (std::sqrt(5.0) - 1) / 4;
    C.facet = {5, {-(1 + std::sqrt(5.0)) / 4, c72}, "regular pentagon"};
    return C;
}

inline SphericalCode c_5_16_3() {
    SphericalCode C;
    C.name = "c_5_16_3";
    C.n = 5;
    C.tau = 3;
    C.T = IndexSet::range(1, 3);
    C.sharp = true;
    const double r = 1 / std::sqrt(5.0);
    for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) {
            Vec v(5, 0.0);
            v[i] = 2 * s * r;
            v[4] = r;
            C.push(v);
        }
    for (int m = 0; m < 16; ++m) {
        if (std::popcount(unsigned(m)) % 2) continue;
        Vec v(5, r);
        for (int i = 0; i < 4; ++i)
            if (m & (1 << i)) v[i] = -r;
        v[4] = -r;
        C.push(v);
    }
    C.distribution = levels({{-0.6, 5}, {0.2, 10}});
    C.witnesses.push_back({Role::case_i, {0, 0, 0, 0, 1}});
    C.facet = {8, {-1, 0}, "cross-polytope"};
    return C;
}

inline SphericalCode c_7_56_5() {
    SphericalCode C;
    C.name = "c_7_56_5";
    C.n = 7;
    C.tau = 5;
    C.T = IndexSet::range(1, 5);
    C.sharp = true;
    const double a = std::sqrt(2.0 / 3), b = 1 / std::sqrt(3.0), e = 1 / std::sqrt(6.0);
    for (int last : {1, -1})
        for (int i = 0; i < 6; ++i)
            for (int s : {1, -1}) {
                Vec v(7, 0.0);
                v[i] = s * a;
                v[6] = last * b;
                C.push(v);
            }
    for (int m = 0; m < 64; ++m) {
        if (std::popcount(unsigned(m)) % 2) continue;
        Vec v(7, 0.0);
        for (int i = 0; i < 6; ++i) v[i] = (m & (1 << i)) ? -e : e;
        C.push(v);
    }
    C.distribution = levels({{-1.0, 1}, {-1.0 / 3, 27}, {1.0 / 3, 27}});
    Vec w(7, 0.0);
    w[6] = 1;
    C.witnesses.push_back({Role::case_i, w});
    C.facet = {12, {-1, 0}, "cross-polytope"};
    return C;
}

inline SphericalCode c_6_27_4() {
    const SphericalCode P = c_7_56_5();
    DerivedCode d = derive_kissing(P, 0, 1.0 / 3);
    SphericalCode& C = d.code;
    C.name = "c_6_27_4";
    C.tau = 4;
    C.T = IndexSet::range(1, 4);
    C.sharp = true;
    C.distribution = levels({{-0.5, 10}, {0.25, 16}});
    Vec w = C.point_vec(0);
    for (auto& x : w) x = -x;
    C.witnesses.push_back({Role::case_i, w});
    C.facet = {10, {-1, 0}, "cross-polytope"};
    return C;
}

inline SphericalCode e8_240() {
    SphericalCode C;
    C.name = "e8_240";
    C.n = 8;
    C.tau = 7;
    C.T = IndexSet::skip(4);
    C.sharp = true;
    const double a = 1 / std::sqrt(8.0), b = 1 / std::sqrt(2.0);
    for (int m = 0; m < 256; ++m) {
        if (std::popcount(unsigned(m)) % 2) continue;
        Vec v(8);
        for (int i = 0; i < 8; ++i) v[i] = (m & (1 << i)) ? -a : a;
        C.push(v);
    }
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    Vec v(8, 0.0);
                    v[i] = si * b;
                    v[j] = sj * b;
                    C.push(v);
                }
    C.distribution = levels({{-1.0, 1}, {-0.5, 56}, {0.0, 126}, {0.5, 56}});
    Vec w(8, 0.0);
    w[0] = 1;
    C.witnesses.push_back({Role::second_level, w});
    C.facet = {14, {-1, 0}, "cross-polytope"};
    return C;
}

inline std::vector<std::uint32_t> weight7_words() { return words_of_weight(golay23(), 7); }

inline SphericalCode c_22_100_3() {
    SphericalCode C;
    C.name = "c_22_100_3";
    C.n = 22;
    C.tau = 3;
    C.T = IndexSet::range(1, 3);
    C.sharp = true;
    const double s5 = std::sqrt(5.0), s22 = std::sqrt(22.0);
    const double x = (8 * s5 - 1) / (11 * s22), y = -(3 * s5 + 1) / (11 * s22);
    const double z = (4 - 21 * s5) / (11 * s22), u = (4 + s5) / (11 * s22);
    C.push(Vec(22, -1 / s22));
    for (int i = 0; i < 22; ++i) {
        Vec v(22, u);
        v[i] = z;
        C.push(v);
    }
    const auto words = weight7_words();
    for (auto w : words) {
        if (!(w & 1u)) continue;
        Vec v(22);
        for (int i = 0; i < 22; ++i) v[i] = bit(w, i + 1) ? x : y;
        C.push(v);
    }
    C.distribution = levels({{-4.0 / 11, 22}, {1.0 / 11, 77}});
    const double a = (5 + 15 * s5) / 110, b = (5 - 7 * s5) / 110;
    for (auto w : words) {
        if (w & 1u) continue;
        Vec v(22);
        for (int i = 0; i < 22; ++i) v[i] = bit(w, i + 1) ? a : b;
        C.witnesses.push_back({Role::case_i, v});
        break;
    }
    C.facet = {50, {}, "Hoffman-Singleton graph"};
    return C;
}

inline SphericalCode c_22_275_4() {
    SphericalCode C;
    C.name = "c_22_275_4";
    C.n = 22;
    C.tau = 4;
    C.T = IndexSet::range(1, 4);
    C.sharp = true;
    const double s30 = std::sqrt(30.0), s2 = std::sqrt(2.0);
    const double x = 2 * s30 / 33 - s2 / 22, y = -s30 / 44 - s2 / 22;
    const double z = 3 * s2 / 44 + 7 * s30 / 44, u = 3 * s2 / 44 - s30 / 132;
    const double a = -5 * s30 / 88 + s2 / 88, b = 7 * s30 / 264 + s2 / 88;
    for (int i = 0; i < 22; ++i) {
        Vec v(22, u);
        v[i] = z;
        C.push(v);
    }
    const auto words = weight7_words();
    for (int pass = 0; pass < 2; ++pass)
        for (auto w : words) {
            if (bit(w, 22) != (pass == 0)) continue;
            Vec v(22);
            for (int i = 0; i < 22; ++i) v[i] = bit(w, i) ? (pass == 0 ? x : a) : (pass == 0 ? y : b);
            C.push(v);
        }
    C.distribution = levels({{-0.25, 112}, {1.0 / 6, 162}});
    Vec w = C.point_vec(0);
    for (auto& t : w) t = -t;
    C.witnesses.push_back({Role::case_i, w});
    C.facet = {112, {-1.0 / 3, 1.0 / 9}, "(21,112,3) sharp code"};
    return C;
}

inline Vec centroid(const SphericalCode& C, const std::vector<std::size_t>& idx) {
    Vec g(C.n, 0.0);
    for (auto i : idx)
        for (int j = 0; j < C.n; ++j) g[j] += C.point(i)[j] / double(idx.size());
    return g;
}

inline std::vector<std::size_t> at_ip(const SphericalCode& C, const Vec& x, double s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < C.N; ++i)
        if (std::fabs(dot(C.point(i), x.data(), C.n) - s) < 1e-9) out.push_back(i);
    return out;
}

// The two subconstituents of the McLaughlin-type code seen from its 22nd point.
// Witness: (g - e)/|g - e| with e the centroid of the kept set and g the
// centroid of its points adjacent (in the parent's sense) to the first
// point of the other subconstituent.
inline SphericalCode mclaughlin_subconstituent(bool second) {
    const SphericalCode P = c_22_275_4();
    const std::size_t apex = 21;
    const double keep = second ? 1.0 / 6 : -0.25, other = second ? -0.25 : 1.0 / 6;
    DerivedCode d = derive_kissing(P, apex, keep);
    const Vec a = P.point_vec(apex);
    const auto kept = at_ip(P, a, keep);
    const auto rest = at_ip(P, a, other);
    std::vector<std::size_t> common;
    for (auto i : kept)
        if (std::fabs(dot(P.point(i), P.point(rest[0]), P.n) - keep) < 1e-9) common.push_back(i);
    const Vec g = centroid(P, common), e = centroid(P, kept);
    Vec diff(P.n);
    for (int j = 0; j < P.n; ++j) diff[j] = g[j] - e[j];
    SphericalCode& C = d.code;
    C.tau = 3;
    C.T = IndexSet::range(1, 3);
    C.sharp = true;
    if (second) {
        C.name = "c_21_162_3";
        C.distribution = levels({{-2.0 / 7, 56}, {1.0 / 7, 105}});
        C.facet = {81, {}, "Brouwer-Haemers graph"};
    } else {
        C.name = "c_21_112_3";
        C.distribution = levels({{-1.0 / 3, 30}, {1.0 / 9, 81}});
        C.facet = {56, {}, "Gewirtz graph"};
    }
    C.witnesses.push_back({Role::case_i, normalized(d.map.project(normalized(diff)))});
    return C;
}

inline SphericalCode c_23_552_5() {
    const SphericalCode M = c_22_275_4();
    SphericalCode C;
    C.name = "c_23_552_5";
    C.n = 23;
    C.tau = 5;
    C.T = IndexSet::range(1, 5);
    C.sharp = true;
    const double f = 2 * std::sqrt(6.0) / 5;
    std::vector<Vec> xi;
    Vec e(23, 0.0);
    e[22] = 1;
    xi.push_back(e);
    for (std::size_t i = 0; i < M.N; ++i) {
        Vec v(23);
        for (int j = 0; j < 22; ++j) v[j] = M.point(i)[j] * f;
        v[22] = 0.2;
        xi.push_back(v);
    }
    for (auto& v : xi) C.push(v);
    for (std::size_t i = 1; i < xi.size(); ++i) {
        Vec v = xi[i];
        for (auto& t : v) t = -t;
        C.push(v);
    }
    e[22] = -1;
    C.push(e);
    C.distribution = levels({{-1.0, 1}, {-0.2, 275}, {0.2, 275}});
    Vec w(23, 0.2);
    w[22] = -std::sqrt(3.0) / 5;
    C.witnesses.push_back({Role::case_i, w});
    C.facet = {100, {-4.0 / 11, 1.0 / 11}, "(22,100,3) sharp code"};
    return C;
}

inline SphericalCode leech() {
    SphericalCode C;
    C.name = "leech_196560";
    C.n = 24;
    C.tau = 11;
    C.T = IndexSet::range(1, 11).add(13).add(14);
    C.sharp = true;
    C.coords.reserve(196560 * 24);
    const double r = 1 / std::sqrt(32.0);
    for (int i = 0; i < 24; ++i)
        for (int j = i + 1; j < 24; ++j)
            for (int si : {1, -1})
                for (int sj : {1, -1}) {
                    Vec v(24, 0.0);
                    v[i] = 4 * si * r;
                    v[j] = 4 * sj * r;
                    C.push(v);
                }
    const auto& G = golay_extended();
    // Upper signs follow the ones of the codeword; the flipped position gets -3x.
    for (auto w : G.words)
        for (int j = 0; j < 24; ++j) {
            Vec v(24);
            for (int i = 0; i < 24; ++i) v[i] = (bit(w, i) ? 1.0 : -1.0) * r;
            v[j] *= -3;
            C.push(v);
        }
    for (auto w : G.words) {
        if (std::popcount(w) != 8) continue;
        int pos[8], k = 0;
        for (int i = 0; i < 24; ++i)
            if (bit(w, i)) pos[k++] = i;
        for (int m = 0; m < 256; ++m) {
            if (std::popcount(unsigned(m)) % 2) continue;
            Vec v(24, 0.0);
            for (int t = 0; t < 8; ++t) v[pos[t]] = ((m >> t) & 1 ? -2 : 2) * r;
            C.push(v);
        }
    }
    C.distribution = levels({{-1.0, 1}, {-0.5, 4600}, {-0.25, 47104}, {0.0, 93150}, {0.25, 47104}, {0.5, 4600}});
    Vec w(24, 1 / std::sqrt(48.0));
    w[0] = 5 / std::sqrt(48.0);
    C.witnesses.push_back({Role::second_level, w});
    C.facet = {552, {-1, -0.2, 0.2}, "(23,552,5) sharp code"};
    return C;
}

// Ambient R^24 vectors used to locate points and witnesses in the derived codes.
inline Vec scaled(std::initializer_list<double> head, double tail, std::size_t n, double s) {
    Vec v(n, tail * s);
    std::size_t i = 0;
    for (double h : head) v[i++] = h * s;
    return v;
}

struct LeechChain {
    DerivedCode c4600;
    DerivedCode c891;
};

inline LeechChain leech_chain(const SphericalCode& L) {
    // Apex (4,4,0,...)/sqrt(32) is the first type-1 point.
    DerivedCode d1 = derive_kissing(L, 0, 0.5);
    const Vec b = d1.map.project(scaled({-2, 2, 4}, 0, 24, 1 / std::sqrt(24.0)));
    std::size_t bi = d1.code.N;
    for (std::size_t i = 0; i < d1.code.N; ++i)
        if (dot(d1.code.point(i), b.data(), 23) > 1 - 1e-9) bi = i;
    if (bi == d1.code.N) throw ConstructionError("c_22_891_5: apex not found in the 4600-point code");
    DerivedCode d2 = derive_kissing(d1.code, bi, 1.0 / 3);
    return {std::move(d1), std::move(d2)};
}

inline SphericalCode c_23_4600_7(const SphericalCode& L) {
    DerivedCode d = leech_chain(L).c4600;
    SphericalCode& C = d.code;
    C.name = "c_23_4600_7";
    C.tau = 7;
    C.T = IndexSet::range(1, 7);
    C.sharp = true;
    C.distribution = levels({{-1.0, 1}, {-1.0 / 3, 891}, {0.0, 2816}, {1.0 / 3, 891}});
    C.witnesses.push_back({Role::case_i, d.map.project(scaled({-2, 2}, 1, 24, 1 / std::sqrt(30.0)))});
    C.facet = {275, {-0.25, 1.0 / 6}, "(22,275,4) sharp code"};
    return C;
}

inline SphericalCode c_22_891_5(const SphericalCode& L) {
    LeechChain ch = leech_chain(L);
    SphericalCode& C = ch.c891.code;
    C.name = "c_22_891_5";
    C.tau = 5;
    C.T = IndexSet::range(1, 5);
    C.sharp = true;
    C.distribution = levels({{-0.5, 42}, {-0.125, 512}, {0.25, 336}});
    Vec w = scaled({-1, 1, -1}, 1, 24, 1 / std::sqrt(24.0));
    C.witnesses.push_back({Role::case_i, ch.c891.map.project(ch.c4600.map.project(w))});
    C.facet = {162, {-2.0 / 7, 1.0 / 7}, "(21,162,3) sharp code"};
    return C;
}

inline SphericalCode cell_600() {
    SphericalCode C;
    C.name = "cell_600";
    C.n = 4;
    C.tau = 11;
    C.T = IndexSet::range(1, 11);
    for (int d = 13; d <= 19; ++d) C.T.add(d);
    for (int i = 0; i < 4; ++i)
        for (int s : {1, -1}) {
            Vec v(4, 0.0);
            v[i] = s;
            C.push(v);
        }
    for (int m = 0; m < 16; ++m) {
        Vec v(4);
        for (int i = 0; i < 4; ++i) v[i] = (m & (1 << i)) ? -0.5 : 0.5;
        C.push(v);
    }
    const double base[4] = {phi / 2, 0.5, 1 / (2 * phi), 0};
    int perm[4] = {0, 1, 2, 3};
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inv += perm[i] > perm[j];
        if (inv % 2) continue;
        for (int m = 0; m < 8; ++m) {
            Vec v(4, 0.0);
            for (int k = 0; k < 3; ++k) v[perm[k]] = (m & (1 << k)) ? -base[k] : base[k];
            C.push(v);
        }
    } while (std::next_permutation(perm, perm + 4));
    const double r5 = std::sqrt(5.0);
    C.distribution = levels({{-1.0, 1},
                             {-(1 + r5) / 4, 12},
                             {-0.5, 20},
                             {(1 - r5) / 4, 12},
                             {0.0, 30},
                             {(r5 - 1) / 4, 12},
                             {0.5, 20},
                             {(1 + r5) / 4, 12}});
    C.witnesses.push_back({Role::cell600, C.point_vec(0)});
    return C;
}

inline void finalize(SphericalCode& C) {
    C.expected_ips = values_of(C.distribution);
    validate(C);
}

}  // namespace detail

// Names in the catalog; the parameterized families take (N) or (n).
inline std::vector<std::string> catalog_names() {
    return {"ngon(N)",     "simplex(n)",  "cross_polytope(n)", "cube",          "icosahedron",
            "dodecahedron", "c_5_16_3",   "c_6_27_4",          "c_7_56_5",      "e8_240",
            "c_21_112_3",  "c_21_162_3",  "c_22_100_3",        "c_22_275_4",    "c_22_891_5",
            "c_23_552_5",  "c_23_4600_7", "leech_196560",      "cell_600"};
}

// Accepts "ngon(5)" or "ngon:5" style for the families.
inline std::string canonical_name(const std::string& name) {
    static const std::regex fam(R"((ngon|simplex|cross_polytope)[(:](\d+)\)?)");
    std::smatch m;
    if (std::regex_match(name, m, fam)) return m[1].str() + "(" + std::to_string(std::stoi(m[2].str())) + ")";
    return name;
}

using CodePtr = std::shared_ptr<const SphericalCode>;

inline CodePtr build_code(const std::string& raw) {
    static std::mutex mu;
    static std::map<std::string, CodePtr> cache;
    const std::string name = canonical_name(raw);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(name); it != cache.end()) return it->second;
    }
    SphericalCode C;
    static const std::regex fam(R"((ngon|simplex|cross_polytope)\((\d+)\))");
    std::smatch m;
    if (std::regex_match(name, m, fam)) {
        const int p = std::stoi(m[2].str());
        if (p > 24 && m[1] != "ngon") throw InvalidArgument(name + ": dimension above 24 is not supported");
        if (m[1] == "ngon" && p > 24) throw InvalidArgument(name + ": N above 24 is not supported");
        if (m[1] == "ngon") C = detail::ngon(p);
        else if (m[1] == "simplex") C = detail::simplex(p);
        else C = detail::cross_polytope(p);
    } else if (name == "cube") C = detail::cube();
    else if (name == "icosahedron") C = detail::icosahedron();
    else if (name == "dodecahedron") C = detail::dodecahedron();
    else if (name == "c_5_16_3") C = detail::c_5_16_3();
    else if (name == "c_6_27_4") C = detail::c_6_27_4();
    else if (name == "c_7_56_5") C = detail::c_7_56_5();
    else if (name == "e8_240") C = detail::e8_240();
    else if (name == "c_21_112_3") C = detail::mclaughlin_subconstituent(false);
    else if (name == "c_21_162_3") C = detail::mclaughlin_subconstituent(true);
    else if (name == "c_22_100_3") C = detail::c_22_100_3();
    else if (name == "c_22_275_4") C = detail::c_22_275_4();
    else if (name == "c_23_552_5") C = detail::c_23_552_5();
    else if (name == "leech_196560") C = detail::leech();
    else if (name == "c_23_4600_7") C = detail::c_23_4600_7(*build_code("leech_196560"));
    else if (name == "c_22_891_5") C = detail::c_22_891_5(*build_code("leech_196560"));
    else if (name == "cell_600") C = detail::cell_600();
    else throw InvalidArgument("unknown code '" + raw + "'");
    detail::finalize(C);
    auto ptr = std::make_shared<const SphericalCode>(std::move(C));
    std::lock_guard lock(mu);
    return cache.emplace(name, ptr).first->second;
}

// Case (ii) minima sit at code points; the first point stands in for all.
inline Vec witness_point(const SphericalCode& C, Role role) {
    if (role == Role::case_ii) return C.point_vec(0);
    if (const Witness* w = C.find_witness(role)) return w->x;
    if (role == Role::case_i)
        throw Refused(C.name + ": not attained at first level (marked * in the case (i) table)");
    throw Refused(C.name + ": no " + to_string(role) + " witness in the catalog");
}

inline void export_points(const SphericalCode& C, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        char buf[32];
        for (std::size_t i = 0; i < C.N; ++i) {
            for (int j = 0; j < C.n; ++j) {
                std::snprintf(buf, sizeof buf, "%.17g", C.point(i)[j]);
                if (j) out << ',';
                out << buf;
            }
            out << '\n';
        }
    } else if (format == "json") {
        nlohmann::json j;
        j["schema"] = "sharpcode/1";
        j["name"] = C.name;
        j["n"] = C.n;
        j["N"] = C.N;
        auto& pts = j["points"] = nlohmann::json::array();
        for (std::size_t i = 0; i < C.N; ++i) pts.push_back(C.point_vec(i));
        out << j.dump() << '\n';
    } else {
        throw InvalidArgument("export: unknown format '" + format + "' (csv or json)");
    }
}

}  // namespace sharpcode
