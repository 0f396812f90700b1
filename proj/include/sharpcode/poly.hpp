#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sharpcode {

// Real polynomial stored by monomial coefficients, c[i] multiplies t^i.
// The zero polynomial is {0} with degree 0.
template <class T = double>
class Poly {
public:
    using value_type = T;

    Poly() : c_{T(0)} {}
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    Poly(std::initializer_list<T> c) : c_(c) { trim(); }

    static Poly constant(T v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(int k, T v = T(1)) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = v;
        return Poly(std::move(c));
    }
    // Monic polynomial with the given roots.
    template <class Range>
    static Poly from_roots(const Range& roots) {
        Poly p = constant(T(1));
        for (auto r : roots) p = p * Poly{-T(r), T(1)};
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == T(0); }
    T lead() const { return c_.back(); }
    const std::vector<T>& coeffs() const { return c_; }
    T operator[](int i) const { return i <= degree() ? c_[static_cast<std::size_t>(i)] : T(0); }

    template <class U>
    U eval(U t) const {
        U acc = U(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * t + U(c_[i]);
        return acc;
    }
    T operator()(T t) const { return eval<T>(t); }

    Poly derivative() const {
        if (degree() == 0) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = T(i) * c_[i];
        return Poly(std::move(d));
    }

    template <class U>
    Poly<U> cast() const {
        std::vector<U> c(c_.begin(), c_.end());
        return Poly<U>(std::move(c));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) { return *this += o * T(-1); }
    Poly& operator*=(T s) {
        for (auto& x : c_) x *= s;
        trim();
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, T s) { return a *= s; }
    friend Poly operator*(T s, Poly a) { return a *= s; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }

private:
    void trim() {
        while (c_.size() > 1 && c_.back() == T(0)) c_.pop_back();
        if (c_.empty()) c_.push_back(T(0));
    }

    std::vector<T> c_;
};

}  // namespace sharpcode
