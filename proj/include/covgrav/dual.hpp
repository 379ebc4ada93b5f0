#pragma once

// Forward-mode differentiation value: scalar payload plus a dense gradient
// over a caller-chosen set of seed slots. An empty gradient means "no
// dependence on any seed" and is treated as all zeros, so constants stay
// cheap. The payload type nests: Dual<double>, Dual<TaylorJet>,
// Dual<Dual<double>> are all valid.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "covgrav/taylor_jet.hpp"

namespace covgrav {

inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
inline TaylorJet zero_like(const TaylorJet& j) { return TaylorJet::constant(0.0, j.order()); }
inline TaylorJet one_like(const TaylorJet& j) { return TaylorJet::constant(1.0, j.order()); }

template <class T>
struct Dual {
    T v{};
    std::vector<T> d;  // empty == zero gradient

    Dual() = default;
    Dual(T value) : v(std::move(value)) {}  // NOLINT: implicit by design, constants promote
    Dual(T value, std::vector<T> grad) : v(std::move(value)), d(std::move(grad)) {}

    static Dual seeded(T value, int slot, int dim) {
        std::vector<T> g(static_cast<size_t>(dim), zero_like(value));
        g[static_cast<size_t>(slot)] = one_like(value);
        return Dual(std::move(value), std::move(g));
    }

    // gradient entry, tolerating the empty (all-zero) representation
    T grad(int slot) const {
        if (d.empty()) return zero_like(v);
        return d[static_cast<size_t>(slot)];
    }
};

template <class T>
Dual<T> zero_like(const Dual<T>& x) {
    return Dual<T>(zero_like(x.v));
}
template <class T>
Dual<T> one_like(const Dual<T>& x) {
    return Dual<T>(one_like(x.v));
}

template <class T>
double value_of(const Dual<T>& x) {
    return value_of(x.v);
}

namespace dual_detail {

// c1*a.d + c2*b.d with empty-vector handling; c1/c2 are payload values
template <class T>
std::vector<T> lincomb(const std::vector<T>& a, const T& c1, const std::vector<T>& b, const T& c2) {
    if (a.empty() && b.empty()) return {};
    std::vector<T> r;
    const size_t n = a.empty() ? b.size() : a.size();
    r.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (a.empty())
            r.push_back(b[i] * c2);
        else if (b.empty())
            r.push_back(a[i] * c1);
        else
            r.push_back(a[i] * c1 + b[i] * c2);
    }
    return r;
}

template <class T>
std::vector<T> scaled(const std::vector<T>& a, const T& c) {
    std::vector<T> r;
    r.reserve(a.size());
    for (const auto& x : a) r.push_back(x * c);
    return r;
}

}  // namespace dual_detail

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
    if (a.d.empty() && b.d.empty()) return Dual<T>(a.v + b.v);
    return Dual<T>(a.v + b.v, dual_detail::lincomb(a.d, one_like(a.v), b.d, one_like(a.v)));
}
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
    if (a.d.empty() && b.d.empty()) return Dual<T>(a.v - b.v);
    T one = one_like(a.v);
    return Dual<T>(a.v - b.v, dual_detail::lincomb(a.d, one, b.d, -one));
}
template <class T>
Dual<T> operator-(const Dual<T>& a) {
    Dual<T> r(-a.v);
    r.d.reserve(a.d.size());
    for (const auto& x : a.d) r.d.push_back(-x);
    return r;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    if (a.d.empty() && b.d.empty()) return Dual<T>(a.v * b.v);
    return Dual<T>(a.v * b.v, dual_detail::lincomb(a.d, b.v, b.d, a.v));
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T inv_b = one_like(b.v) / b.v;
    T q = a.v * inv_b;
    if (a.d.empty() && b.d.empty()) return Dual<T>(std::move(q));
    return Dual<T>(q, dual_detail::lincomb(a.d, inv_b, b.d, -(q * inv_b)));
}

// mixed scalar overloads
template <class T>
Dual<T> operator+(const Dual<T>& a, double s) {
    Dual<T> r = a;
    r.v = r.v + s;
    return r;
}
template <class T>
Dual<T> operator+(double s, const Dual<T>& a) {
    return a + s;
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double s) {
    return a + (-s);
}
template <class T>
Dual<T> operator-(double s, const Dual<T>& a) {
    return (-a) + s;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double s) {
    Dual<T> r(a.v * s);
    r.d.reserve(a.d.size());
    for (const auto& x : a.d) r.d.push_back(x * s);
    return r;
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& a) {
    return a * s;
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double s) {
    return a * (1.0 / s);
}
template <class T>
Dual<T> operator/(double s, const Dual<T>& a) {
    return Dual<T>(T(one_like(a.v) * s)) / a;
}

template <class T>
Dual<T> chain_unary(const Dual<T>& a, T fv, const T& dfv) {
    return Dual<T>(std::move(fv), dual_detail::scaled(a.d, dfv));
}

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    T half = one_like(a.v) * 0.5;
    return chain_unary(a, s, T(half / s));
}
template <class T>
Dual<T> exp(const Dual<T>& a) {
    using std::exp;
    T e = exp(a.v);
    return chain_unary(a, e, e);
}
template <class T>
Dual<T> log(const Dual<T>& a) {
    using std::log;
    return chain_unary(a, log(a.v), T(one_like(a.v) / a.v));
}
template <class T>
Dual<T> sin(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return chain_unary(a, sin(a.v), cos(a.v));
}
template <class T>
Dual<T> cos(const Dual<T>& a) {
    using std::cos;
    using std::sin;
    return chain_unary(a, cos(a.v), T(-sin(a.v)));
}
template <class T>
Dual<T> pow(const Dual<T>& a, int n) {
    if (n == 0) return Dual<T>(one_like(a.v));
    using std::pow;
    T fv = pow(a.v, n);
    T df = pow(a.v, n - 1) * static_cast<double>(n);
    return chain_unary(a, std::move(fv), df);
}
template <class T>
Dual<T> pow(const Dual<T>& a, double p) {
    using std::log;
    using std::pow;
    T fv = pow(a.v, p);
    T df = pow(a.v, p - 1.0) * p;
    return chain_unary(a, std::move(fv), df);
}
// generic-exponent pow used by the expression evaluator
template <class T>
Dual<T> pow(const Dual<T>& a, const Dual<T>& b) {
    return exp(b * log(a));
}
inline TaylorJet pow(const TaylorJet& a, const TaylorJet& b) { return exp(b * log(a)); }
inline double pow_general(double a, double b) { return std::pow(a, b); }

}  // namespace covgrav
