#pragma once

// Quadrature rules for mu_n: first-level PULB rules (cases i/ii), Gauss,
// Levenshtein 1/N, and the Skip 1-Add 2 rule exact on
// T^k = {1..2k+2} \ {2k}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "orthopoly.hpp"
#include "poly.hpp"

namespace sharpcode {

struct IndexSet {
    std::vector<int> degrees;  // sorted, positive

    static IndexSet range(int lo, int hi) {
        IndexSet s;
        for (int i = lo; i <= hi; ++i) s.degrees.push_back(i);
        return s;
    }
    // {1..2k+2} \ {2k}
    static IndexSet skip(int k) {
        IndexSet s = range(1, 2 * k + 2);
        std::erase(s.degrees, 2 * k);
        return s;
    }
    IndexSet& add(int d) {
        if (!contains(d)) {
            degrees.push_back(d);
            std::sort(degrees.begin(), degrees.end());
        }
        return *this;
    }
    bool contains(int d) const { return std::binary_search(degrees.begin(), degrees.end(), d); }
    int max() const { return degrees.empty() ? 0 : degrees.back(); }
};

enum class RuleKind { pulb_i, pulb_ii, gauss, levenshtein, skip1add2 };

inline std::string to_string(RuleKind k) {
    switch (k) {
        case RuleKind::pulb_i: return "pulb_i";
        case RuleKind::pulb_ii: return "pulb_ii";
        case RuleKind::gauss: return "gauss";
        case RuleKind::levenshtein: return "levenshtein_1_over_N";
        case RuleKind::skip1add2: return "skip1add2";
    }
    return "?";
}

inline RuleKind parse_rule_kind(const std::string& s) {
    if (s == "pulb_i") return RuleKind::pulb_i;
    if (s == "pulb_ii") return RuleKind::pulb_ii;
    if (s == "gauss") return RuleKind::gauss;
    if (s == "levenshtein" || s == "levenshtein_1_over_N") return RuleKind::levenshtein;
    if (s == "skip1add2") return RuleKind::skip1add2;
    throw InvalidArgument("unknown rule kind '" + s + "'");
}

struct QuadratureRule {
    int n = 0;
    RuleKind kind = RuleKind::gauss;
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // positive
    IndexSet exact_on;
    std::optional<double> N;  // levenshtein only: extra node 1 with weight 1/N

    // Skip 1-Add 2: q_{k+1} = P_{k+1} + b P_{k-1}, (b, c) solving the moment system.
    // Levenshtein: the monic annihilator of the free nodes.
    double b = 0, c = 0;
    Poly<double> annihilator;

    template <class F>
    double apply(F&& f) const {
        Real s = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += Real(weights[i]) * Real(f(nodes[i]));
        if (N) s += Real(f(1.0)) / Real(*N);
        return double(s);
    }
    double weight_sum() const {
        Real s = 0;
        for (double w : weights) s += w;
        if (N) s += 1 / Real(*N);
        return double(s);
    }
};

struct Strength {
    int k;
    int eps;
};

// tau = 2k - 1 + eps with eps in {0, 1}.
inline Strength split_strength(int tau) {
    if (tau < 1) throw InvalidArgument("strength must be >= 1");
    const int k = (tau % 2) ? (tau + 1) / 2 : tau / 2;
    return {k, tau - 2 * k + 1};
}

// rho_i = int l_i d mu_n over the Lagrange basis of the given nodes.
inline std::vector<Real> lagrange_weights(int n, const std::vector<Real>& x) {
    std::vector<Real> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Poly<Real> l = Poly<Real>::constant(1);
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j == i) continue;
            l = l * Poly<Real>{-x[j] / (x[i] - x[j]), 1 / (x[i] - x[j])};
        }
        w[i] = integrate(n, l);
    }
    return w;
}

namespace detail {

inline QuadratureRule finish(int n, RuleKind kind, const std::vector<Real>& x, IndexSet T) {
    QuadratureRule r;
    r.n = n;
    r.kind = kind;
    r.exact_on = std::move(T);
    const auto w = lagrange_weights(n, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(w[i] > 0))
            throw ConstructionError(to_string(kind) + ": non-positive weight " + std::to_string(double(w[i])) +
                                    " at node " + std::to_string(double(x[i])));
        r.nodes.push_back(double(x[i]));
        r.weights.push_back(double(w[i]));
    }
    return r;
}

template <class Build>
const QuadratureRule& memo(RuleKind kind, int n, int param, double N, Build&& build) {
    using Key = std::tuple<int, int, int, double>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<QuadratureRule>> cache;
    const Key key{int(kind), n, param, N};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto rule = std::make_unique<QuadratureRule>(build());
    std::lock_guard lock(mu);
    auto& slot = cache[key];
    if (!slot) slot = std::move(rule);
    return *slot;
}

inline std::vector<Bracket> brackets_from(const std::vector<Real>& z, Real lo, Real hi) {
    std::vector<Bracket> br;
    for (Real r : z) {
        br.push_back({lo, r});
        lo = r;
    }
    br.push_back({lo, hi});
    return br;
}

}  // namespace detail

inline void check_dim(int n) {
    if (n < 2 || n > GegenbauerBasis::max_degree) throw InvalidArgument("dimension out of range");
}

inline const QuadratureRule& gauss(int n, int k) {
    check_dim(n);
    if (k < 1) throw InvalidArgument("gauss: k must be >= 1");
    return detail::memo(RuleKind::gauss, n, k, 0, [&] {
        return detail::finish(n, RuleKind::gauss, jacobi_zeros(n, 0, 0, k), IndexSet::range(1, 2 * k - 1));
    });
}

// Nodes: zeros of (1+t)^eps P_k^{(0,eps)}.
inline const QuadratureRule& pulb_case_i(int n, int tau) {
    check_dim(n);
    const Strength st = split_strength(tau);
    const int k = st.k, eps = st.eps;
    return detail::memo(RuleKind::pulb_i, n, tau, 0, [&] {
        std::vector<Real> x;
        if (eps) x.push_back(-1);
        for (Real z : jacobi_zeros(n, 0, eps, k)) x.push_back(z);
        return detail::finish(n, RuleKind::pulb_i, x, IndexSet::range(1, tau));
    });
}

// Nodes: zeros of (t-1)(t+1)^{1-eps} P_{k-1+eps}^{(1,1-eps)}.
inline const QuadratureRule& pulb_case_ii(int n, int tau) {
    check_dim(n);
    const Strength st = split_strength(tau);
    const int k = st.k, eps = st.eps;
    return detail::memo(RuleKind::pulb_ii, n, tau, 0, [&] {
        std::vector<Real> x;
        if (!eps) x.push_back(-1);
        for (Real z : jacobi_zeros(n, 1, 1 - eps, k - 1 + eps)) x.push_back(z);
        x.push_back(1);
        return detail::finish(n, RuleKind::pulb_ii, x, IndexSet::range(1, tau));
    });
}

inline std::uint64_t binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= b; ++i) r = r * std::uint64_t(a - b + i) / std::uint64_t(i);
    return r;
}

// Delsarte-Goethals-Seidel lower bound on the size of a tau-design.
inline std::uint64_t dgs_bound(int n, int tau) {
    const Strength st = split_strength(tau);
    const int k = st.k, eps = st.eps;
    return binomial(n + k - 2 + eps, n - 1) + binomial(n + k - 2, n - 1);
}

// Radau/Lobatto rule with the preassigned node 1 of weight 1/N, exact on
// degrees <= tau.  The free nodes are the zeros of the monic q of degree k
// fixed by int q w P_j d mu = w(1) q(1) P_j(1) / N, j < k, where w = (1+t)^eps.
inline const QuadratureRule& levenshtein_1_over_N(int n, double N, int tau) {
    check_dim(n);
    const Strength st = split_strength(tau);
    const int k = st.k, eps = st.eps;
    if (N < double(dgs_bound(n, tau)) * (1 - 1e-12))
        throw InvalidArgument("levenshtein_1_over_N: N below the DGS bound " + std::to_string(dgs_bound(n, tau)));
    return detail::memo(RuleKind::levenshtein, n, tau, N, [&] {
        const auto& B = basis(n);
        const Poly<Real> w = eps ? Poly<Real>{1, 1} : Poly<Real>::constant(1);
        const Real w1 = eps ? 2 : 1;
        const Real invN = 1 / Real(N);
        using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
        using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
        Mat A(k, k);
        Vec rhs(k);
        for (int j = 0; j < k; ++j) {
            const Poly<Real> wp = w * B.gegenbauer(j);
            for (int m = 0; m <= k; ++m) {
                const Real v = integrate(n, Poly<Real>::monomial(m) * wp) - w1 * invN;
                if (m < k)
                    A(j, m) = v;
                else
                    rhs(j) = -v;
            }
        }
        const Vec sol = A.fullPivLu().solve(rhs);
        std::vector<Real> qc(static_cast<std::size_t>(k) + 1, 1);
        for (int m = 0; m < k; ++m) qc[m] = sol(m);
        const Poly<Real> q(qc);

        // Free nodes interlace with the zeros of P_{k-1}^{(1,eps)}; the lowest
        // bracket reaches below -1 so a node sitting exactly at -1 is captured.
        auto roots = isolate_roots(q, detail::brackets_from(jacobi_zeros(n, 1, eps, k - 1), -1.5L, 1));
        for (auto& r : roots) {
            if (std::fabs(r + 1) < 1e-9L) r = -1;
            if (r < -1 || (eps && r == -1))
                throw InfeasibleRule("levenshtein_1_over_N: node " + std::to_string(double(r)) + " outside (-1,1)",
                                     -1, double(r));
        }
        std::vector<Real> x;
        if (eps) x.push_back(-1);
        x.insert(x.end(), roots.begin(), roots.end());
        x.push_back(1);
        auto wts = lagrange_weights(n, x);
        if (std::fabs(wts.back() - invN) > 1e-9L * invN + 1e-13L)
            throw ConstructionError("levenshtein_1_over_N: weight at node 1 is " + std::to_string(double(wts.back())) +
                                    ", expected 1/N");
        QuadratureRule r;
        r.n = n;
        r.kind = RuleKind::levenshtein;
        r.exact_on = IndexSet::range(1, tau);
        r.N = N;
        r.annihilator = q.cast<double>();
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            // At N = D(n, 2k) the adjoined node -1 carries zero weight; drop it.
            if (std::fabs(wts[i]) <= 1e-12L) continue;
            if (!(wts[i] > 0))
                throw InfeasibleRule("levenshtein_1_over_N: negative weight " + std::to_string(double(wts[i])) +
                                         " at node " + std::to_string(double(x[i])),
                                     int(i), double(wts[i]));
            r.nodes.push_back(double(x[i]));
            r.weights.push_back(double(wts[i]));
        }
        return r;
    });
}

struct SkipCoefficients {
    Real b, c;
};

// Positive/negative roots (b, c) of z^2 - (b+c) z + bc.
inline SkipCoefficients skip_coefficients(int n, int k) {
    const Real al = Real(n) / 2 - 1;
    const Real den = (2 * al + k) * (2 * al + k - 1);
    const Real prod = -Real(k + 1) * k * (al + k - 1) / (den * (al + k + 1));
    const Real sum = -2 * al * Real(k + 1) * (k + 1) * (al + k - 1) / (den * (al + 2 * k + 1));
    const Real disc = std::sqrt(sum * sum - 4 * prod);
    return {(sum + disc) / 2, (sum - disc) / 2};
}

inline const QuadratureRule& skip1add2(int n, int k) {
    check_dim(n);
    if (n < 3 || k < 1) throw InvalidArgument("skip1add2: requires n >= 3, k >= 1");
    if (2 * k + 2 > GegenbauerBasis::max_degree) throw InvalidArgument("skip1add2: k too large");
    return detail::memo(RuleKind::skip1add2, n, k, 0, [&] {
        const SkipCoefficients bc = skip_coefficients(n, k);
        const Real b = bc.b, c = bc.c;
        const auto& B = basis(n);
        const Poly<Real> q = B.gegenbauer(k + 1) + B.gegenbauer(k - 1) * b;
        const auto x = isolate_roots(q, detail::brackets_from(jacobi_zeros(n, 0, 0, k), -1, 1));
        QuadratureRule r = detail::finish(n, RuleKind::skip1add2, x, IndexSet::skip(k));
        r.b = double(b);
        r.c = double(c);
        r.annihilator = q.cast<double>();
        return r;
    });
}

// Residual of the identity rule(P_i) = delta_{i0} over {0} u exact_on; with
// deep, also over 200 random elements of that span.
inline double verify_exactness(const QuadratureRule& rule, bool deep = false, std::uint64_t seed = 42) {
    const auto& B = basis(rule.n);
    std::vector<int> degs{0};
    degs.insert(degs.end(), rule.exact_on.degrees.begin(), rule.exact_on.degrees.end());
    std::vector<double> on_basis;
    double worst = 0;
    for (int d : degs) {
        const double v = rule.apply([&](double t) { return jacobi_eval(B, 0, 0, d, t); });
        on_basis.push_back(v);
        worst = std::max(worst, std::fabs(v - (d == 0 ? 1.0 : 0.0)));
    }
    if (deep) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> U(-1, 1);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> r(degs.size());
            for (auto& v : r) v = U(rng);
            std::vector<double> coef(static_cast<std::size_t>(rule.exact_on.max()) + 1, 0.0);
            for (std::size_t i = 0; i < degs.size(); ++i) coef[degs[i]] = r[i];
            const Poly<Real> f = gegenbauer_synthesize(rule.n, coef).template cast<Real>();
            const double v = rule.apply([&](double t) { return double(f(Real(t))); });
            worst = std::max(worst, std::fabs(v - r[0]));
        }
    }
    return worst;
}

// Rule applied to the Gegenbauer polynomial of degree d (no delta subtracted).
inline double apply_to_gegenbauer(const QuadratureRule& rule, int d) {
    const auto& B = basis(rule.n);
    return rule.apply([&](double t) { return jacobi_eval(B, 0, 0, d, t); });
}

}  // namespace sharpcode
