#pragma once

// Gegenbauer and adjacent Jacobi polynomials P_i^{(a,b)}, a,b in {0,1},
// normalized by P(1) = 1, and integration against the probability
// measure d mu_n(t) = gamma_n (1 - t^2)^{(n-3)/2} dt on [-1,1].
//
// gamma_n never appears explicitly: every integral reduces to the even
// moments of mu_n, which satisfy m_0 = 1 and a one-step recurrence.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace sharpcode {

// Working precision for constructions; results are handed out as double.
using Real = long double;

template <class T = double>
T measure_moment(int n, int j) {
    if (n < 2) throw InvalidArgument("measure_moment: n must be >= 2");
    if (j < 0) throw InvalidArgument("measure_moment: negative power");
    if (j % 2) return T(0);
    Real m = 1;
    for (int i = 1; i <= j / 2; ++i) m *= Real(2 * i - 1) / Real(2 * i + n - 2);
    return T(m);
}

// f_0 = int f d mu_n, the constant Gegenbauer coefficient of f.
template <class T>
T integrate(int n, const Poly<T>& f) {
    Real s = 0;
    const auto& c = f.coeffs();
    for (int j = 0; j < static_cast<int>(c.size()); j += 2) s += Real(c[j]) * measure_moment<Real>(n, j);
    return T(s);
}

inline void check_family(int a, int b) {
    if ((a != 0 && a != 1) || (b != 0 && b != 1))
        throw InvalidArgument("adjacent Jacobi family requires a,b in {0,1}, got (" + std::to_string(a) +
                              "," + std::to_string(b) + ")");
}

// Jacobi parameters of P^{(a,b)} in dimension n.
inline std::pair<Real, Real> jacobi_params(int n, int a, int b) {
    return {Real(a) + Real(n - 3) / 2, Real(b) + Real(n - 3) / 2};
}

// Unnormalized Jacobi recurrence step: returns coefficients (A, B, C) with
// P_i = (A t + B) P_{i-1} - C P_{i-2}, valid for i >= 2.
inline std::array<Real, 3> jacobi_step(Real al, Real be, int i) {
    const Real s = 2 * i + al + be;
    const Real d = 2 * i * (i + al + be) * (s - 2);
    return {(s - 1) * s * (s - 2) / d, (s - 1) * (al * al - be * be) / d,
            2 * (i + al - 1) * (i + be - 1) * s / d};
}

// P_i^{(al,be)}(1) = binom(i + al, i).
inline Real jacobi_at_one(Real al, int i) {
    Real v = 1;
    for (int m = 1; m <= i; ++m) v *= (al + m) / m;
    return v;
}

class GegenbauerBasis {
public:
    static constexpr int max_degree = 26;

    explicit GegenbauerBasis(int n) : n_(n) {
        if (n < 2) throw InvalidArgument("GegenbauerBasis: n must be >= 2");
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) build(a, b);
    }

    int n() const { return n_; }
    Real alpha() const { return Real(n_) / 2 - 1; }

    const Poly<Real>& poly(int a, int b, int i) const {
        check_family(a, b);
        if (i < 0 || i > max_degree) throw InvalidArgument("GegenbauerBasis: degree out of range");
        return fam_[2 * a + b][static_cast<std::size_t>(i)];
    }
    const Poly<Real>& gegenbauer(int i) const { return poly(0, 0, i); }

private:
    void build(int a, int b) {
        auto& f = fam_[2 * a + b];
        f.reserve(max_degree + 1);
        f.push_back(Poly<Real>::constant(1));
        if (a == 0 && b == 0) {
            // (2al + k) P_{k+1} = 2 (al + k) t P_k - k P_{k-1}; P_1 = t for every n.
            const Real al = alpha();
            f.push_back(Poly<Real>{0, 1});
            for (int k = 1; k < max_degree; ++k) {
                Poly<Real> next = Poly<Real>{0, 2 * (al + k)} * f[k] - Real(k) * f[k - 1];
                f.push_back(next * (1 / (2 * al + k)));
            }
            return;
        }
        auto [al, be] = jacobi_params(n_, a, b);
        std::vector<Poly<Real>> raw{Poly<Real>::constant(1),
                                    Poly<Real>{(al + 1) - (al + be + 2) / 2, (al + be + 2) / 2}};
        for (int i = 2; i <= max_degree; ++i) {
            auto [A, B, C] = jacobi_step(al, be, i);
            raw.push_back(Poly<Real>{B, A} * raw[i - 1] - C * raw[i - 2]);
        }
        for (int i = 1; i <= max_degree; ++i) f.push_back(raw[i] * (1 / jacobi_at_one(al, i)));
    }

    int n_;
    std::array<std::vector<Poly<Real>>, 4> fam_;
};

// Shared per-dimension basis; built once under a lock, immutable afterwards.
inline const GegenbauerBasis& basis(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GegenbauerBasis>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GegenbauerBasis>(n);
    return *slot;
}

// P_i^{(a,b)}(t) by the three-term recurrence, normalized to 1 at t = 1.
template <class T = double>
T jacobi_eval(const GegenbauerBasis& B, int a, int b, int i, T t) {
    check_family(a, b);
    if (i < 0) throw InvalidArgument("jacobi_eval: negative degree");
    if (i == 0) return T(1);
    const Real x = t;
    if (a == 0 && b == 0) {
        const Real al = B.alpha();
        Real p0 = 1, p1 = x;
        for (int k = 1; k < i; ++k) {
            Real p2 = (2 * (al + k) * x * p1 - k * p0) / (2 * al + k);
            p0 = p1;
            p1 = p2;
        }
        return T(p1);
    }
    auto [al, be] = jacobi_params(B.n(), a, b);
    Real p0 = 1, p1 = (al + 1) + (al + be + 2) * (x - 1) / 2;
    Real scale = 1 / (al + 1);
    for (int k = 2; k <= i; ++k) {
        auto [A, Bc, C] = jacobi_step(al, be, k);
        Real p2 = (A * x + Bc) * p1 - C * p0;
        p0 = p1;
        p1 = p2;
        scale *= Real(k) / (al + k);
    }
    return T(p1 * scale);
}

// Values P_0..P_deg of the Gegenbauer family at t, written to out[0..deg].
template <class T>
void gegenbauer_all(int n, int deg, T t, T* out) {
    const T al = T(n) / 2 - 1;
    out[0] = 1;
    if (deg >= 1) out[1] = t;
    for (int k = 1; k < deg; ++k) out[k + 1] = (2 * (al + k) * t * out[k] - k * out[k - 1]) / (2 * al + k);
}

template <class T = double>
T gegenbauer_eval(int n, int i, T t) {
    return jacobi_eval<T>(basis(n), 0, 0, i, t);
}

// (f_0, ..., f_deg) with f = sum f_i P_i^{(n)}, by peeling off the top degree.
template <class T>
std::vector<T> gegenbauer_expand(int n, const Poly<T>& f) {
    const auto& B = basis(n);
    const int d = f.degree();
    if (d > GegenbauerBasis::max_degree) throw InvalidArgument("gegenbauer_expand: degree too large");
    std::vector<Real> c(f.coeffs().begin(), f.coeffs().end());
    std::vector<T> out(static_cast<std::size_t>(d) + 1, T(0));
    for (int k = d; k >= 0; --k) {
        const auto& P = B.gegenbauer(k);
        const Real fk = c[k] / P.lead();
        out[k] = T(fk);
        for (int j = 0; j <= k; ++j) c[j] -= fk * P[j];
    }
    return out;
}

template <class T>
Poly<T> gegenbauer_synthesize(int n, const std::vector<T>& coef) {
    const auto& B = basis(n);
    Poly<Real> acc;
    for (std::size_t k = 0; k < coef.size(); ++k) acc += B.gegenbauer(static_cast<int>(k)) * Real(coef[k]);
    return acc.template cast<T>();
}

template <class T = double>
T gegenbauer_norm_sq(int n, int k) {
    if (k < 0) throw InvalidArgument("gegenbauer_norm_sq: negative degree");
    if (k == 0) return T(1);
    Real binom = 1;  // C(k+n-2, k)
    for (int i = 1; i <= k; ++i) binom = binom * Real(n - 2 + i) / Real(i);
    return T(Real(n + k - 2) / Real(n + 2 * k - 2) / binom);
}

struct Bracket {
    Real lo;
    Real hi;
};

// One root per bracket: bisection to width 1e-12, then Newton polish that is
// only accepted while it stays in the bracket and does not increase |f|.
template <class T>
std::vector<T> isolate_roots(const Poly<T>& f, const std::vector<Bracket>& brackets) {
    const Poly<Real> F = f.template cast<Real>();
    const Poly<Real> dF = F.derivative();
    std::vector<T> roots;
    roots.reserve(brackets.size());
    for (const auto& br : brackets) {
        Real lo = br.lo, hi = br.hi;
        Real flo = F(lo), fhi = F(hi);
        Real x;
        if (flo == 0) {
            x = lo;
        } else if (fhi == 0) {
            x = hi;
        } else {
            if ((flo > 0) == (fhi > 0))
                throw MissingRoot("missing root: no sign change on [" + std::to_string(double(lo)) + ", " +
                                  std::to_string(double(hi)) + "]");
            while (hi - lo > 1e-12L) {
                Real mid = (lo + hi) / 2;
                Real fm = F(mid);
                if (fm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0) == (flo > 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            x = (lo + hi) / 2;
            const Real wlo = lo - 1e-12L, whi = hi + 1e-12L;
            for (int it = 0; it < 30; ++it) {
                Real fx = F(x), d = dF(x);
                if (fx == 0 || d == 0) break;
                Real nx = x - fx / d;
                if (nx < wlo || nx > whi || std::fabs(F(nx)) > std::fabs(fx)) break;
                if (std::fabs(nx - x) <= 1e-19L * (1 + std::fabs(x))) {
                    x = nx;
                    break;
                }
                x = nx;
            }
        }
        roots.push_back(T(x));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// Zeros of P_k^{(a,b)} in ascending order; each is bracketed by consecutive
// zeros of P_{k-1}^{(a,b)} (interlacing), with -1 and 1 at the ends.
inline std::vector<Real> jacobi_zeros(int n, int a, int b, int k) {
    check_family(a, b);
    std::vector<Real> z;
    for (int d = 1; d <= k; ++d) {
        std::vector<Bracket> br;
        Real lo = -1;
        for (Real r : z) {
            br.push_back({lo, r});
            lo = r;
        }
        br.push_back({lo, 1});
        z = isolate_roots(basis(n).poly(a, b, d), br);
    }
    return z;
}

}  // namespace sharpcode
