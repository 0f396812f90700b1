#pragma once

// Moments and design certificates, distance distributions, potential sums,
// bound evaluation, attainment at witnesses, the descent-based search for
// the minimum of U_h on the sphere, and the level-set (facet) checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "codes.hpp"
#include "orthopoly.hpp"
#include "parallel.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

namespace sharpcode {

enum class Mode { full, sampled };

inline Mode parse_mode(const std::string& s) {
    if (s == "full") return Mode::full;
    if (s == "sampled") return Mode::sampled;
    throw InvalidArgument("unknown mode '" + s + "' (full or sampled)");
}

inline Vec random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Vec v(n);
    for (auto& x : v) x = g(rng);
    return normalized(v);
}

// Moments M_0..M_deg in one pass.  Full mode sums P_i(x.y) over all ordered
// pairs; sampled mode returns, per degree, the largest |sum_y P_i(x.y)| over
// m random x (a code is a design in that degree iff this vanishes for all x).
inline std::vector<double> moments(const SphericalCode& C, int deg, Mode mode, int m = 20, std::uint64_t seed = 42) {
    if (deg < 1) throw InvalidArgument("moments: degree must be >= 1");
    const std::size_t D = std::size_t(deg) + 1;
    if (mode == Mode::full) {
        constexpr std::size_t block = 32;
        std::vector<std::vector<CompensatedSum>> part((C.N + block - 1) / block, std::vector<CompensatedSum>(D));
        for_blocks(C.N, block, [&](std::size_t b, std::size_t lo, std::size_t hi) {
            std::vector<double> P(D);
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = i + 1; j < C.N; ++j) {
                    gegenbauer_all(C.n, deg, dot(C.point(i), C.point(j), C.n), P.data());
                    for (std::size_t d = 0; d < D; ++d) part[b][d].add(2 * P[d]);
                }
        });
        std::vector<double> out(D);
        for (std::size_t d = 0; d < D; ++d) {
            CompensatedSum s;
            s.add(double(C.N));  // diagonal, P_i(1) = 1
            for (auto& p : part) s.add(p[d].value());
            out[d] = s.value();
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::vector<Vec> xs;
    for (int s = 0; s < m; ++s) xs.push_back(random_unit(C.n, rng));
    std::vector<std::vector<double>> per(xs.size(), std::vector<double>(D));
    for_blocks(xs.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) {
            std::vector<CompensatedSum> acc(D);
            std::vector<double> P(D);
            for (std::size_t j = 0; j < C.N; ++j) {
                gegenbauer_all(C.n, deg, dot(xs[s].data(), C.point(j), C.n), P.data());
                for (std::size_t d = 0; d < D; ++d) acc[d].add(P[d]);
            }
            for (std::size_t d = 0; d < D; ++d) per[s][d] = std::fabs(acc[d].value());
        }
    });
    std::vector<double> out(D, 0.0);
    for (auto& p : per)
        for (std::size_t d = 0; d < D; ++d) out[d] = std::max(out[d], p[d]);
    return out;
}

inline double moment(const SphericalCode& C, int i, Mode mode, int m = 20) { return moments(C, i, mode, m)[i]; }

struct DegreeCheck {
    int degree;
    double residual;
    double threshold;
    bool pass;
};

inline std::vector<DegreeCheck> design_certificate(const SphericalCode& C, const IndexSet& T, Mode mode) {
    const auto M = moments(C, T.max(), mode);
    const double thr = mode == Mode::full ? 1e-9 * double(C.N) * double(C.N) : 1e-6 * double(C.N);
    std::vector<DegreeCheck> out;
    for (int d : T.degrees) out.push_back({d, std::fabs(M[d]), thr, std::fabs(M[d]) <= thr});
    return out;
}

struct DistanceDistribution {
    std::vector<Level> entries;  // ascending
    Vec base;
    double tol = 1e-9;
    bool self_excluded = false;

    std::size_t total() const {
        std::size_t s = 0;
        for (auto& e : entries) s += e.count;
        return s;
    }
    // Count at a value, 0 when absent.
    std::size_t count_at(double v, double eps = 1e-8) const {
        for (auto& e : entries)
            if (std::fabs(e.value - v) <= eps) return e.count;
        return 0;
    }
};

inline std::vector<double> inner_products(const Vec& x, const SphericalCode& C) {
    std::vector<double> ips(C.N);
    for_blocks(C.N, 4096, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) ips[j] = dot(x.data(), C.point(j), C.n);
    });
    return ips;
}

// Clusters of the sorted values: a cluster spans at most tol, and distinct
// clusters must be more than 2 tol apart.
inline std::vector<Level> cluster(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<Level> out;
    std::size_t i = 0;
    double prev_hi = -INFINITY;
    while (i < v.size()) {
        std::size_t j = i;
        long double s = 0;
        while (j < v.size() && v[j] - v[i] <= tol) s += v[j++];
        if (v[i] - prev_hi <= 2 * tol)
            throw ClusteringAmbiguity("clusters at " + std::to_string(prev_hi) + " and " + std::to_string(v[i]) +
                                      " are closer than twice the tolerance");
        out.push_back({double(s / (j - i)), j - i});
        prev_hi = v[j - 1];
        i = j;
    }
    return out;
}

inline DistanceDistribution distance_distribution(const Vec& x, const SphericalCode& C, double tol = 1e-9,
                                                  bool exclude_self = false) {
    if (x.size() != std::size_t(C.n) || std::fabs(std::sqrt(dot(x, x)) - 1) > 1e-9)
        throw InvalidArgument("distance_distribution: base point must be a unit vector in R^" + std::to_string(C.n));
    auto ips = inner_products(x, C);
    if (exclude_self) {
        auto it = std::max_element(ips.begin(), ips.end());
        if (*it < 1 - 1e-9) throw InvalidArgument("distance_distribution: base point is not in the code");
        ips.erase(it);
    }
    return {cluster(std::move(ips), tol), x, tol, exclude_self};
}

// sum_y f(x.y) with a fixed block order and compensated partials.
template <class F>
double potential_sum(F&& f, const Vec& x, const SphericalCode& C) {
    constexpr std::size_t block = 1024;
    std::vector<CompensatedSum> part((C.N + block - 1) / block);
    for_blocks(C.N, block, [&](std::size_t b, std::size_t lo, std::size_t hi) {
        for (std::size_t j = lo; j < hi; ++j) part[b].add(f(dot(x.data(), C.point(j), C.n)));
    });
    CompensatedSum s;
    for (auto& p : part) s.add(p.value());
    return s.value();
}

inline double potential_value(const Potential& h, const Vec& x, const SphericalCode& C) {
    if (h.singular_at_one)
        for (std::size_t j = 0; j < C.N; ++j)
            if (dot(x.data(), C.point(j), C.n) > 1 - 1e-12)
                throw SingularEvaluation("potential_value: " + h.spec + " is singular at code point " +
                                         std::to_string(j));
    return potential_sum([&](double t) { return h(t); }, x, C);
}

// N sum rho_i h(alpha_i); for a Levenshtein rule the node at 1 is included
// with weight 1/N.
inline double pulb_value(const QuadratureRule& rule, const Potential& h, double N) {
    return N * rule.apply([&](double t) { return h(t); });
}

// Energy per point, N sum rho_i h(alpha_i) over the free nodes.
inline double energy_bound_per_point(const QuadratureRule& rule, const Potential& h, double N) {
    CompensatedSum s;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s.add(N * rule.weights[i] * h(rule.nodes[i]));
    return s.value();
}

struct EnergyReport {
    double energy = 0;     // sum over ordered pairs x != y
    double per_point = 0;  // energy / N
    Mode mode = Mode::full;
    std::size_t samples = 0;
    bool consistent = true;
    std::vector<Level> distribution;  // per-point, sampled mode only
};

inline EnergyReport energy(const SphericalCode& C, const Potential& h, Mode mode, int samples = 20,
                           std::uint64_t seed = 42) {
    EnergyReport r;
    r.mode = mode;
    if (mode == Mode::full) {
        constexpr std::size_t block = 32;
        std::vector<CompensatedSum> part((C.N + block - 1) / block);
        for_blocks(C.N, block, [&](std::size_t b, std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t j = i + 1; j < C.N; ++j) part[b].add(2 * h(dot(C.point(i), C.point(j), C.n)));
        });
        CompensatedSum s;
        for (auto& p : part) s.add(p.value());
        r.energy = s.value();
        r.per_point = r.energy / double(C.N);
        r.samples = C.N;
        return r;
    }
    std::mt19937_64 rng(seed);
    std::optional<DistanceDistribution> first;
    for (int s = 0; s < samples; ++s) {
        const std::size_t i = std::size_t(rng() % C.N);
        auto d = distance_distribution(C.point_vec(i), C, 1e-9, true);
        if (!first) {
            first = d;
            continue;
        }
        bool same = d.entries.size() == first->entries.size();
        for (std::size_t l = 0; same && l < d.entries.size(); ++l)
            same = d.entries[l].count == first->entries[l].count &&
                   std::fabs(d.entries[l].value - first->entries[l].value) <= 1e-9;
        if (!same)
            throw ConstructionError(C.name + ": per-point distance distributions differ (point " + std::to_string(i) +
                                    ")");
    }
    CompensatedSum s;
    for (auto& e : first->entries) s.add(double(e.count) * h(e.value));
    r.per_point = s.value();
    r.energy = r.per_point * double(C.N);
    r.samples = std::size_t(samples);
    r.distribution = first->entries;
    return r;
}

// ---------------------------------------------------------------------------
// Empirical minimization of U_h(., C) over the sphere.

struct SearchResult {
    double value = INFINITY;
    Vec point;
    std::size_t starts = 0;
};

namespace detail {

inline double value_and_gradient(const Potential& h, const SphericalCode& C, const Vec& x, Vec& g) {
    std::fill(g.begin(), g.end(), 0.0);
    CompensatedSum v;
    for (std::size_t j = 0; j < C.N; ++j) {
        const double* y = C.point(j);
        const double t = dot(x.data(), y, C.n);
        v.add(h(t));
        const double d = h.derivative(t);
        for (int k = 0; k < C.n; ++k) g[k] += d * y[k];
    }
    const double r = dot(g, x);
    for (int k = 0; k < C.n; ++k) g[k] -= r * x[k];  // tangential part
    return v.value();
}

// Lipschitz estimate of the tangential gradient from finite differences at
// random points.
inline double lipschitz_estimate(const Potential& h, const SphericalCode& C, std::mt19937_64& rng) {
    double L = 1e-12;
    Vec g1(C.n), g2(C.n);
    for (int s = 0; s < 8; ++s) {
        const Vec x = random_unit(C.n, rng);
        Vec u = random_unit(C.n, rng);
        const double p = dot(u, x);
        for (int k = 0; k < C.n; ++k) u[k] = x[k] + 1e-3 * (u[k] - p * x[k]);
        const Vec y = normalized(u);
        value_and_gradient(h, C, x, g1);
        value_and_gradient(h, C, y, g2);
        double num = 0, den = 0;
        for (int k = 0; k < C.n; ++k) {
            num += (g1[k] - g2[k]) * (g1[k] - g2[k]);
            den += (x[k] - y[k]) * (x[k] - y[k]);
        }
        L = std::max(L, std::sqrt(num / den));
    }
    return L;
}

// Armijo descent with renormalization; the step doubles after each accepted
// move and halves on rejection.
inline std::pair<double, Vec> descend(const Potential& h, const SphericalCode& C, Vec x, double step0) {
    Vec g(C.n), gn(C.n), xn(C.n);
    double U = value_and_gradient(h, C, x, g);
    double step = step0;
    double window_start = U;
    int it = 0;
    for (; it < 10000 && step >= 1e-12; ++it) {
        const double gg = dot(g, g);
        if (gg <= 1e-30 * std::max(1.0, U * U)) break;
        for (int k = 0; k < C.n; ++k) xn[k] = x[k] - step * g[k];
        xn = normalized(xn);
        const double Un = value_and_gradient(h, C, xn, gn);
        if (Un <= U - 1e-4 * step * gg) {
            x.swap(xn);
            g.swap(gn);
            U = Un;
            step *= 2;
        } else {
            step /= 2;
        }
        // Stall: less than 1e-15 relative progress over 200 iterations.
        if (it % 200 == 199) {
            if (window_start - U <= 1e-15 * std::max(1.0, std::fabs(U))) break;
            window_start = U;
        }
    }
    return {U, x};
}

}  // namespace detail

inline int default_restarts(const SphericalCode& C) {
    if (C.N > 5000) return 0;
    return C.n <= 8 ? 200 : 50;
}

// Starts: `restarts` seeded random points, then the catalog witnesses
// (unless disabled) and any extra points.  Ties keep the earliest start.
inline SearchResult global_min_search(const SphericalCode& C, const Potential& h, int restarts, std::uint64_t seed = 42,
                                      const std::vector<Vec>& extra = {}, bool catalog_witnesses = true) {
    std::mt19937_64 rng(seed);
    const double step0 = 0.1 / detail::lipschitz_estimate(h, C, rng);
    std::vector<Vec> starts;
    for (int r = 0; r < restarts; ++r) starts.push_back(random_unit(C.n, rng));
    if (catalog_witnesses)
        for (const auto& w : C.witnesses)
            if (w.role != Role::cell600) starts.push_back(w.x);
    for (const auto& e : extra) starts.push_back(e);
    std::vector<std::pair<double, Vec>> res(starts.size());
    for_blocks(starts.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t s = lo; s < hi; ++s) res[s] = detail::descend(h, C, starts[s], step0);
    });
    SearchResult best;
    best.starts = starts.size();
    for (auto& [v, x] : res)
        if (v < best.value) {
            best.value = v;
            best.point = x;
        }
    return best;
}

// ---------------------------------------------------------------------------
// Attainment.

enum class BoundLevel { first_i, first_ii, second, cell600 };

inline std::string to_string(BoundLevel l) {
    switch (l) {
        case BoundLevel::first_i: return "first_i";
        case BoundLevel::first_ii: return "first_ii";
        case BoundLevel::second: return "second";
        case BoundLevel::cell600: return "cell600";
    }
    return "?";
}

inline BoundLevel parse_level(const std::string& s) {
    if (s == "first_i") return BoundLevel::first_i;
    if (s == "first_ii") return BoundLevel::first_ii;
    if (s == "second") return BoundLevel::second;
    if (s == "cell600") return BoundLevel::cell600;
    throw InvalidArgument("unknown level '" + s + "' (first_i, first_ii, second, cell600)");
}

struct WitnessResult {
    Vec point;
    double value = 0;
    double gap = 0;
    DistanceDistribution distribution;
    bool counts_ok = false;
    std::string mismatch;
};

struct BoundReport {
    std::string code;
    int n = 0;
    std::size_t N = 0;
    std::string level;
    std::string rule_kind;
    std::string potential;
    std::vector<double> nodes;
    std::vector<double> expected_counts;  // N * weight, before rounding
    double bound = 0;
    double witness_value = 0;
    double gap = 0;  // worst relative gap over the witnesses
    bool attained = false;
    std::vector<WitnessResult> witnesses;
    std::optional<double> search_floor;
    std::size_t search_starts = 0;
    bool search_ok = true;
    std::optional<double> domination;  // max relative excess of the interpolant over h
    std::string started, finished;
    std::vector<std::string> notes;
};

struct CheckOptions {
    bool search = true;
    int restarts = -1;  // -1: default policy
    std::uint64_t seed = 42;
    int code_points = 5;  // sampled code points for case (ii)
};

inline std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

inline double scale_of(double bound) { return std::max(1.0, std::fabs(bound)); }

inline std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

// Rounded N * weight; throws Refused when some product is not an integer.
inline std::vector<std::size_t> integer_counts(const SphericalCode& C, const std::vector<double>& expected,
                                               const std::string& level) {
    std::vector<std::size_t> out;
    for (double e : expected) {
        if (std::fabs(e - std::round(e)) > 1e-6)
            throw Refused(C.name + ": not attained at level " + level + " (marked *): N * weight = " +
                          std::to_string(e) + " is not an integer");
        out.push_back(std::size_t(std::llround(e)));
    }
    return out;
}

inline void compare_counts(WitnessResult& w, const std::vector<double>& nodes, const std::vector<std::size_t>& counts) {
    w.counts_ok = w.distribution.entries.size() == nodes.size();
    if (!w.counts_ok) w.mismatch = "witness sees " + std::to_string(w.distribution.entries.size()) + " levels";
    for (std::size_t i = 0; w.counts_ok && i < nodes.size(); ++i) {
        const auto& e = w.distribution.entries[i];
        if (std::fabs(e.value - nodes[i]) > 1e-8 || e.count != counts[i]) {
            w.counts_ok = false;
            w.mismatch = "level " + std::to_string(e.value) + " x " + std::to_string(e.count) + " vs node " +
                         std::to_string(nodes[i]) + " x " + std::to_string(counts[i]);
        }
    }
}

inline int second_level_k(const SphericalCode& C) {
    const int k = (C.tau + 1) / 2;
    for (int d : IndexSet::skip(k).degrees)
        if (!C.T.contains(d)) return 0;
    return k;
}

}  // namespace detail

inline BoundReport attainment_check(const std::string& code_name, BoundLevel level, const Potential& h,
                                    const CheckOptions& opt = {}) {
    const CodePtr cp = build_code(code_name);
    const SphericalCode& C = *cp;
    BoundReport r;
    r.started = utc_now();
    r.code = C.name;
    r.n = C.n;
    r.N = C.N;
    r.level = to_string(level);
    r.potential = h.spec;
    const double N = double(C.N);

    std::vector<Vec> points;
    const QuadratureRule* rule = nullptr;
    bool include_self = false;
    switch (level) {
        case BoundLevel::first_i:
            check_sign(h, SignCase::abs_monotone, "first_i");
            rule = &pulb_case_i(C.n, C.tau);
            break;
        case BoundLevel::first_ii:
            check_sign(h, SignCase::case_ii, "first_ii");
            rule = &pulb_case_ii(C.n, C.tau);
            include_self = true;
            break;
        case BoundLevel::second: {
            const int k = detail::second_level_k(C);
            if (k < 2) throw Refused(C.name + ": moments do not vanish on the second-level index set");
            rule = &skip1add2(C.n, k);
            const auto I = second_level_interpolant(C.n, k, h, false);
            r.domination = I.dom.worst;
            break;
        }
        case BoundLevel::cell600: {
            if (C.name != "cell_600") throw Refused(C.name + ": the cell600 level applies to the 600-cell only");
            if (!h.d16_nonpositive) r.notes.push_back(h.spec + " is not known to satisfy h^(16) <= 0");
            const auto I = cell600_interpolant(h, false);
            r.domination = I.dom.worst;
            r.rule_kind = "cell600_interpolant";
            r.bound = N * gegenbauer_expand(4, I.poly)[0];
            r.nodes = cell600_inner_products();
            r.expected_counts = {1, 12, 20, 12, 30, 12, 20, 12, 1};
            // Any excess above rounding means H <= h fails, even when it is
            // far inside the attainment tolerance.
            if (I.dom.worst > 1e-13)
                r.notes.push_back("interpolant exceeds h by " + fmt_g(I.dom.worst) + " (relative) at t = " +
                                  fmt_g(I.dom.at) + "; the value is exact on the 600-cell but not a certified bound");
            include_self = true;
            break;
        }
    }
    if (rule) {
        r.rule_kind = to_string(rule->kind);
        r.nodes = rule->nodes;
        for (double w : rule->weights) r.expected_counts.push_back(N * w);
        r.bound = pulb_value(*rule, h, N);
    }
    const auto counts = detail::integer_counts(C, r.expected_counts, r.level);

    if (include_self) {
        std::mt19937_64 rng(opt.seed);
        for (int s = 0; s < opt.code_points; ++s) points.push_back(C.point_vec(s == 0 ? 0 : std::size_t(rng() % C.N)));
    } else {
        points.push_back(witness_point(C, level == BoundLevel::second ? Role::second_level : Role::case_i));
    }

    const double sc = scale_of(r.bound);
    r.attained = true;
    for (const auto& x : points) {
        WitnessResult w;
        w.point = x;
        w.value = potential_sum([&](double t) { return h(t); }, x, C);
        w.gap = std::fabs(w.value - r.bound) / sc;
        w.distribution = distance_distribution(x, C);
        detail::compare_counts(w, r.nodes, counts);
        r.attained = r.attained && w.gap <= 1e-9 && w.counts_ok;
        r.gap = std::max(r.gap, w.gap);
        r.witnesses.push_back(std::move(w));
    }
    r.witness_value = r.witnesses.front().value;

    if (opt.search) {
        const int restarts = opt.restarts < 0 ? default_restarts(C) : opt.restarts;
        // Minima at code points: start there instead of at the other witnesses.
        const auto s = global_min_search(C, h, restarts, opt.seed, points, !include_self);
        r.search_floor = s.value;
        r.search_starts = s.starts;
        r.search_ok = s.value >= r.bound - 1e-8 * sc;
        if (s.value < r.bound)
            r.notes.push_back("search value is below the bound by " + fmt_g((r.bound - s.value) / sc) +
                              " (relative)");
    }
    r.finished = utc_now();
    return r;
}

// The largest lower bound for Q_h(C) certified by the constructions here:
// first level for the code's strength, and the second level when the code
// has the needed moments.
struct CertifiedBound {
    double value;
    std::string source;
};

inline CertifiedBound certified_bound(const SphericalCode& C, const Potential& h) {
    const double N = double(C.N);
    CertifiedBound b{-INFINITY, ""};
    if (h.sign == SignCase::abs_monotone) {
        b = {pulb_value(pulb_case_i(C.n, C.tau), h, N), "first_i"};
        if (const int k = detail::second_level_k(C); k >= 2) {
            const auto I = second_level_interpolant(C.n, k, h, false);
            const double v = N * gegenbauer_expand(C.n, I.poly)[0];
            if (I.dom.worst <= 1e-9 && I.correction >= 0 && v > b.value) b = {v, "second"};
        }
    } else if (h.sign == SignCase::case_ii) {
        b = {pulb_value(pulb_case_ii(C.n, C.tau), h, N), "first_ii"};
    } else {
        throw InvalidArgument("certified_bound: " + h.spec + " has no derivative-sign descriptor");
    }
    return b;
}

// ---------------------------------------------------------------------------
// Level sets seen from a minimum.

struct FacetReport {
    double centroid_error = 0;  // max over levels of |centroid - alpha y|
    bool centroid_ok = false;
    std::size_t top_size = 0;
    double top_expected = 0;  // N * rho at the largest node
    bool top_ok = false;
    double witness_error = 0;  // |y - normalized top centroid|
    bool witness_ok = false;
    std::vector<double> spectrum;  // recentered pairwise inner products of the top set
    bool spectrum_ok = true;       // vacuous when the catalog lists no spectrum
    bool size_ok = true;
    // y is a furthest point from C exactly when no code point is closer to
    // y than the largest node allows.
    double max_ip = 0;
    bool max_ok = false;
    bool pass = false;
};

inline FacetReport facet_checks(const SphericalCode& C, const Vec& y, const QuadratureRule& rule) {
    FacetReport f;
    const auto ips = inner_products(y, C);
    std::vector<std::vector<std::size_t>> sets(rule.nodes.size());
    for (std::size_t j = 0; j < C.N; ++j)
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            if (std::fabs(ips[j] - rule.nodes[i]) <= 1e-9) sets[i].push_back(j);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) continue;
        const Vec c = detail::centroid(C, sets[i]);
        double e = 0;
        for (int k = 0; k < C.n; ++k) e += (c[k] - rule.nodes[i] * y[k]) * (c[k] - rule.nodes[i] * y[k]);
        f.centroid_error = std::max(f.centroid_error, std::sqrt(e));
    }
    f.centroid_ok = f.centroid_error <= 1e-8;

    const auto& top = sets.back();
    const double a = rule.nodes.back();
    f.max_ip = *std::max_element(ips.begin(), ips.end());
    f.max_ok = std::fabs(f.max_ip - a) <= 1e-9;
    f.top_size = top.size();
    f.top_expected = double(C.N) * rule.weights.back();
    f.top_ok = std::fabs(f.top_expected - double(top.size())) < 1e-6 && top.size() >= std::size_t(C.n);
    if (!top.empty()) {
        const Vec c = normalized(detail::centroid(C, top));
        double e = 0;
        for (int k = 0; k < C.n; ++k) e += (c[k] - y[k]) * (c[k] - y[k]);
        f.witness_error = std::sqrt(e);
    }
    f.witness_ok = !top.empty() && f.witness_error <= 1e-8;

    std::vector<Vec> w;
    const double r = std::sqrt(1 - a * a);
    for (auto j : top) {
        Vec z = C.point_vec(j);
        for (int k = 0; k < C.n; ++k) z[k] = (z[k] - a * y[k]) / r;
        w.push_back(std::move(z));
    }
    std::vector<double> pair;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) pair.push_back(dot(w[i], w[j]));
    for (auto& l : cluster(pair, 1e-8)) f.spectrum.push_back(l.value);
    if (C.facet.size) f.size_ok = C.facet.size == top.size();
    if (!C.facet.spectrum.empty()) {
        f.spectrum_ok = f.spectrum.size() == C.facet.spectrum.size();
        for (std::size_t i = 0; f.spectrum_ok && i < f.spectrum.size(); ++i)
            f.spectrum_ok = std::fabs(f.spectrum[i] - C.facet.spectrum[i]) <= 1e-8;
    }
    f.pass = f.max_ok && f.centroid_ok && f.top_ok && f.witness_ok && f.size_ok && f.spectrum_ok;
    return f;
}

}  // namespace sharpcode
