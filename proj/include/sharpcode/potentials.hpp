#pragma once

// Potential kernels h(t), confluent divided differences (multiplicity <= 2),
// Hermite interpolants in Newton form, and the interpolants with one
// Gegenbauer component annihilated that certify the higher-level bounds.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "orthopoly.hpp"
#include "poly.hpp"
#include "quadrature.hpp"

namespace sharpcode {

enum class SignCase {
    abs_monotone,  // all derivatives >= 0 on [-1,1)
    case_ii,       // all derivatives of order >= 1 are <= 0
    custom,
};

struct Potential {
    std::string spec;
    SignCase sign = SignCase::custom;
    bool singular_at_one = false;
    // h^(16) <= 0 on [-1,1] (the hypothesis of the 600-cell bound).
    bool d16_nonpositive = false;
    std::function<double(double)> value_fn;
    std::function<double(double)> derivative_fn;

    // Rounding puts a code point's self inner product at 1 +- 1e-16, which
    // matters for kernels with a cusp at 1; snap to the interval ends.
    double clamp(double t) const {
        if (singular_at_one) return std::min(t, 1.0 - 1e-12);
        if (t >= 1 - 1e-14) return 1;
        return std::max(t, -1.0);
    }
    double operator()(double t) const { return value_fn(clamp(t)); }
    double derivative(double t) const { return derivative_fn(std::min(t, 1.0 - 1e-12)); }
};

// (2 - 2t)^{-s/2}
inline Potential riesz(double s) {
    if (s == 0) throw InvalidArgument("riesz: s must be nonzero (use log)");
    Potential h;
    h.spec = "riesz:" + std::to_string(s);
    h.sign = s > 0 ? SignCase::abs_monotone : (s > -2 ? SignCase::case_ii : SignCase::custom);
    h.singular_at_one = s > 0;
    h.value_fn = [s](double t) { return std::pow(2 - 2 * t, -s / 2); };
    h.derivative_fn = [s](double t) { return s * std::pow(2 - 2 * t, -s / 2 - 1); };
    return h;
}

// -log(2 - 2t) / 2
inline Potential log_potential() {
    Potential h;
    h.spec = "log";
    h.sign = SignCase::abs_monotone;
    h.singular_at_one = true;
    h.value_fn = [](double t) { return -0.5 * std::log(2 - 2 * t); };
    h.derivative_fn = [](double t) { return 1 / (2 - 2 * t); };
    return h;
}

inline Potential exp_potential(double a) {
    Potential h;
    h.spec = "exp:" + std::to_string(a);
    h.sign = a > 0 ? SignCase::abs_monotone : SignCase::custom;
    h.value_fn = [a](double t) { return std::exp(a * t); };
    h.derivative_fn = [a](double t) { return a * std::exp(a * t); };
    return h;
}

// sum_{i=0}^{15} (a t)^i / i!.  For 0 < a <= 1 every derivative of order
// 1..15 is >= 0 on [-1,1] and h^(16) = 0.
inline Potential trunc_exp(double a) {
    auto series = [a](double t, int terms) {
        long double x = (long double)a * t, term = 1, s = 0;
        for (int i = 0; i < terms; ++i) {
            s += term;
            term *= x / (i + 1);
        }
        return s;
    };
    Potential h;
    h.spec = "trunc_exp:" + std::to_string(a);
    const bool ok = a > 0 && a <= 1;
    h.sign = ok ? SignCase::abs_monotone : SignCase::custom;
    h.d16_nonpositive = ok;
    h.value_fn = [series](double t) { return double(series(t, 16)); };
    h.derivative_fn = [series, a](double t) { return double(a * series(t, 15)); };
    return h;
}

inline Potential parse_potential(const std::string& spec) {
    auto param = [&](const std::string& prefix) {
        const std::string rest = spec.substr(prefix.size());
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(rest, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != rest.size()) throw InvalidArgument("bad potential parameter in '" + spec + "'");
        return v;
    };
    Potential h;
    if (spec.rfind("riesz:", 0) == 0)
        h = riesz(param("riesz:"));
    else if (spec == "log")
        h = log_potential();
    else if (spec.rfind("exp:", 0) == 0)
        h = exp_potential(param("exp:"));
    else if (spec.rfind("trunc_exp:", 0) == 0)
        h = trunc_exp(param("trunc_exp:"));
    else
        throw InvalidArgument("unknown potential '" + spec + "' (expected riesz:<s>, log, exp:<a>, trunc_exp:<a>)");
    h.spec = spec;
    return h;
}

// Nodes listed with repetition; a node may appear at most twice, and
// repeated copies must be adjacent.
using NodeMultiset = std::vector<double>;

inline NodeMultiset doubled_interior(const std::vector<double>& nodes) {
    NodeMultiset m;
    for (double x : nodes) {
        m.push_back(x);
        if (std::fabs(x) < 1) m.push_back(x);
    }
    return m;
}

inline void check_multiset(const Potential& h, const NodeMultiset& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i >= 2 && m[i] == m[i - 1] && m[i] == m[i - 2])
            throw InvalidArgument("node multiplicity > 2 is not supported");
        for (std::size_t j = 0; j + 1 < i; ++j)
            if (m[j] == m[i] && m[j + 1] != m[i]) throw InvalidArgument("repeated nodes must be adjacent");
        if (h.singular_at_one && m[i] > 1 - 1e-9)
            throw SingularEvaluation("node " + std::to_string(m[i]) + " too close to the singularity of " + h.spec);
    }
}

// Newton divided differences h[t_1], h[t_1,t_2], ..., with h' replacing the
// first difference at a repeated node.
inline std::vector<Real> divided_differences(const Potential& h, const NodeMultiset& m) {
    check_multiset(h, m);
    const std::size_t M = m.size();
    std::vector<Real> col(M), out;
    for (std::size_t i = 0; i < M; ++i) col[i] = h(m[i]);
    out.push_back(col[0]);
    for (std::size_t j = 1; j < M; ++j) {
        for (std::size_t i = M - 1; i >= j; --i) {
            const Real dz = Real(m[i]) - Real(m[i - j]);
            if (dz == 0)
                col[i] = h.derivative(m[i]);  // only possible for j == 1
            else
                col[i] = (col[i] - col[i - 1]) / dz;
        }
        out.push_back(col[j]);
    }
    return out;
}

inline Poly<Real> newton_synthesize(const std::vector<Real>& dd, const NodeMultiset& m) {
    Poly<Real> acc, u = Poly<Real>::constant(1);
    for (std::size_t j = 0; j < dd.size(); ++j) {
        acc += u * dd[j];
        u = u * Poly<Real>{-Real(m[j]), 1};
    }
    return acc;
}

inline Poly<double> hermite_interpolant(const Potential& h, const NodeMultiset& m) {
    return newton_synthesize(divided_differences(h, m), m).cast<double>();
}

struct Domination {
    double worst = 0;  // max of (P - h) / max(1, |h|) over the grid
    double at = 0;
};

// P <= h on 10^5 Chebyshev points of [-1,1].
inline Domination domination(const Potential& h, const Poly<double>& P, int points = 100000) {
    const Poly<Real> Q = P.cast<Real>();
    Domination d{-INFINITY, 0};
    for (int j = 0; j < points; ++j) {
        const double t = std::cos(std::numbers::pi * (j + 0.5) / points);
        const double hv = h(t);
        const double ex = double((Q(Real(t)) - Real(hv)) / std::max(1.0, std::fabs(hv)));
        if (ex > d.worst) d = {ex, t};
    }
    return d;
}

inline void require_domination(const Potential& h, const Domination& d, const std::string& what) {
    if (d.worst > 1e-9)
        throw DominationFailure(what + ": interpolant exceeds " + h.spec + " by " + std::to_string(d.worst) +
                                    " (relative) at t = " + std::to_string(d.at),
                                d.at, d.worst);
}

struct Interpolant {
    Poly<double> poly;     // the certifying polynomial
    Poly<double> hermite;  // Hermite interpolant before any correction
    double correction = 0;        // multiple of the annihilating polynomial removed
    double annihilated = 0;       // remaining coefficient at the skipped degree
    Domination dom;
};

enum class Case { i, ii };

inline void check_sign(const Potential& h, SignCase need, const std::string& what) {
    if (h.sign != SignCase::custom && h.sign != need)
        throw InvalidArgument(what + ": potential " + h.spec + " has the wrong derivative sign for this case");
}

// Degree-tau Hermite interpolant at the first-level PULB nodes.
inline Interpolant case_interpolant(int n, int tau, Case c, const Potential& h, bool check = true) {
    check_sign(h, c == Case::i ? SignCase::abs_monotone : SignCase::case_ii, "case_interpolant");
    const auto& rule = c == Case::i ? pulb_case_i(n, tau) : pulb_case_ii(n, tau);
    Interpolant r;
    r.hermite = r.poly = hermite_interpolant(h, doubled_interior(rule.nodes));
    r.dom = domination(h, r.poly);
    if (check) require_domination(h, r.dom, "case_interpolant");
    return r;
}

// G = H - (H_{2k} / e_{2k}) g_{k+1}^2 with H the Hermite interpolant at the
// doubled Skip 1-Add 2 nodes and g_{k+1} their monic node polynomial.
inline Interpolant second_level_interpolant(int n, int k, const Potential& h, bool check = true) {
    check_sign(h, SignCase::abs_monotone, "second_level_interpolant");
    const auto& rule = skip1add2(n, k);
    const NodeMultiset m = doubled_interior(rule.nodes);
    const Poly<Real> H = newton_synthesize(divided_differences(h, m), m);
    std::vector<Real> beta(rule.nodes.begin(), rule.nodes.end());
    const Poly<Real> g = Poly<Real>::from_roots(beta);
    const Poly<Real> g2 = g * g;
    const Real e = gegenbauer_expand(n, g2)[2 * k];
    const Real hk = gegenbauer_expand(n, H)[2 * k];
    const Poly<Real> G = H - g2 * (hk / e);
    Interpolant r;
    r.hermite = H.cast<double>();
    r.poly = G.cast<double>();
    r.correction = double(hk / e);
    r.annihilated = double(gegenbauer_expand(n, G)[2 * k]);
    r.dom = domination(h, r.poly);
    if (check) {
        if (r.correction < 0)
            throw DominationFailure("second_level_interpolant: negative correction H_2k/e_2k = " +
                                        std::to_string(r.correction),
                                    0, -r.correction);
        require_domination(h, r.dom, "second_level_interpolant");
    }
    return r;
}

// 2k-th Gegenbauer coefficient of the squared monic node polynomial.
inline double second_level_e(int n, int k) {
    const auto& rule = skip1add2(n, k);
    std::vector<Real> beta(rule.nodes.begin(), rule.nodes.end());
    const Poly<Real> g = Poly<Real>::from_roots(beta);
    return double(gegenbauer_expand(n, g * g)[2 * k]);
}

// Distinct inner products of the 600-cell, ascending.
inline std::vector<double> cell600_inner_products() {
    const double r5 = std::sqrt(5.0);
    return {-1, -(1 + r5) / 4, -0.5, (1 - r5) / 4, 0, (r5 - 1) / 4, 0.5, (1 + r5) / 4, 1};
}

inline NodeMultiset cell600_multiset() { return doubled_interior(cell600_inner_products()); }

// H = g - (g_12 / (g16)_12) g16 in the n = 4 expansion, where g interpolates
// h on the 16-node multiset and g16 is the node polynomial.  Without the
// domination check the polynomial is still exact for sums over the 600-cell.
inline Interpolant cell600_interpolant(const Potential& h, bool check = true) {
    for (int j = 0; j <= 200; ++j) {
        const double t = -1 + 2.0 * j / 200 * (1 - 1e-6);
        const double t2 = std::min(t + 1e-4, 1.0 - 1e-6);
        if (h.derivative(t) < -1e-12 || h.derivative(t2) < h.derivative(t) - 1e-9)
            throw InvalidArgument("cell600_interpolant: " + h.spec + " fails h' >= 0, h'' >= 0");
    }
    const NodeMultiset m = cell600_multiset();
    const Poly<Real> g = newton_synthesize(divided_differences(h, m), m);
    std::vector<Real> roots(m.begin(), m.end());
    const Poly<Real> g16 = Poly<Real>::from_roots(roots);
    const Real ratio = gegenbauer_expand(4, g)[12] / gegenbauer_expand(4, g16)[12];
    const Poly<Real> H = g - g16 * ratio;
    Interpolant r;
    r.hermite = g.cast<double>();
    r.poly = H.cast<double>();
    r.correction = double(ratio);
    r.annihilated = double(gegenbauer_expand(4, H)[12]);
    r.dom = domination(h, r.poly);
    if (check) require_domination(h, r.dom, "cell600_interpolant");
    return r;
}

}  // namespace sharpcode
