#pragma once

// Truncated multivariate Taylor polynomials in the 4 base coordinates.
// Dense coefficient storage in graded-lex order; arithmetic and elementary
// functions are exact truncation of the composed series. Coefficient
// convention: coeff(e) = (d^|e| f / dx^e) / e!.

#include <array>
#include <cmath>
#include <stdexcept>

#include "covgrav/sym_index.hpp"

namespace covgrav {

inline constexpr int kMaxJetOrder = 4;
inline constexpr std::array<int, 5> kJetSize = {1, 5, 15, 35, 70};  // #multi-indices of degree <= k

namespace taylor_detail {

struct Tables {
    std::array<std::array<int, 4>, 70> exps{};
    std::array<int, 70> degree{};
    std::array<double, 70> inv_fact{};  // 1 / e!
    std::array<double, 70> fact{};      // e!
    int index[5][5][5][5] = {};
};

inline const Tables& tables() {
    static const Tables t = [] {
        Tables t{};
        int k = 0;
        for (int d = 0; d <= kMaxJetOrder; ++d)
            for (int e0 = d; e0 >= 0; --e0)
                for (int e1 = d - e0; e1 >= 0; --e1)
                    for (int e2 = d - e0 - e1; e2 >= 0; --e2) {
                        const int e3 = d - e0 - e1 - e2;
                        t.exps[k] = {e0, e1, e2, e3};
                        t.degree[k] = d;
                        auto fac = [](int n) { return n <= 1 ? 1.0 : n == 2 ? 2.0 : n == 3 ? 6.0 : 24.0; };
                        t.fact[k] = fac(e0) * fac(e1) * fac(e2) * fac(e3);
                        t.inv_fact[k] = 1.0 / t.fact[k];
                        t.index[e0][e1][e2][e3] = k;
                        ++k;
                    }
        return t;
    }();
    return t;
}

}  // namespace taylor_detail

class TaylorJet {
  public:
    TaylorJet() : order_(0) { c_.fill(0.0); }

    static TaylorJet constant(double v, int order) {
        TaylorJet j(order);
        j.c_[0] = v;
        return j;
    }

    // The jet of the coordinate function x^i about value v.
    static TaylorJet variable(int i, double v, int order) {
        check_index(i);
        TaylorJet j(order);
        j.c_[0] = v;
        if (order >= 1) j.c_[1 + i] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double value() const { return c_[0]; }
    int size() const { return kJetSize[order_]; }

    double coeff(int flat) const { return c_[flat]; }
    double& coeff(int flat) { return c_[flat]; }

    // Mixed partial derivative d^|e| f / dx^e at the expansion point.
    double partial(std::array<int, 4> e) const {
        const auto& tb = taylor_detail::tables();
        int d = e[0] + e[1] + e[2] + e[3];
        if (d > order_) throw std::out_of_range("partial beyond truncation order");
        int k = tb.index[e[0]][e[1]][e[2]][e[3]];
        return c_[k] * tb.fact[k];
    }

    TaylorJet truncated(int new_order) const {
        if (new_order > order_) throw std::invalid_argument("cannot raise truncation order");
        TaylorJet r(new_order);
        for (int k = 0; k < kJetSize[new_order]; ++k) r.c_[k] = c_[k];
        return r;
    }

    // d/dx^dir as a jet of order-1 lower.
    TaylorJet derivative(int dir) const {
        check_index(dir);
        if (order_ == 0) throw std::invalid_argument("derivative of an order-0 jet");
        const auto& tb = taylor_detail::tables();
        TaylorJet r(order_ - 1);
        for (int k = 0; k < size(); ++k) {
            auto e = tb.exps[k];
            if (e[dir] == 0) continue;
            const int mult = e[dir];
            e[dir] -= 1;
            r.c_[tb.index[e[0]][e[1]][e[2]][e[3]]] += c_[k] * static_cast<double>(mult);
        }
        return r;
    }

    TaylorJet operator-() const {
        TaylorJet r(order_);
        for (int k = 0; k < size(); ++k) r.c_[k] = -c_[k];
        return r;
    }

    friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
        TaylorJet r(std::min(a.order_, b.order_));
        for (int k = 0; k < r.size(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) {
        TaylorJet r(std::min(a.order_, b.order_));
        for (int k = 0; k < r.size(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
        const auto& tb = taylor_detail::tables();
        const int order = std::min(a.order_, b.order_);
        TaylorJet r(order);
        const int na = kJetSize[order], nb = kJetSize[order];
        for (int i = 0; i < na; ++i) {
            const double ai = a.c_[i];
            if (ai == 0.0) continue;
            const int di = tb.degree[i];
            const auto& ei = tb.exps[i];
            for (int j = 0; j < nb; ++j) {
                if (tb.degree[j] + di > order) continue;
                const double bj = b.c_[j];
                if (bj == 0.0) continue;
                const auto& ej = tb.exps[j];
                r.c_[tb.index[ei[0] + ej[0]][ei[1] + ej[1]][ei[2] + ej[2]][ei[3] + ej[3]]] += ai * bj;
            }
        }
        return r;
    }
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) { return a * reciprocal(b); }

    friend TaylorJet operator+(const TaylorJet& a, double s) {
        TaylorJet r = a;
        r.c_[0] += s;
        return r;
    }
    friend TaylorJet operator+(double s, const TaylorJet& a) { return a + s; }
    friend TaylorJet operator-(const TaylorJet& a, double s) { return a + (-s); }
    friend TaylorJet operator-(double s, const TaylorJet& a) { return (-a) + s; }
    friend TaylorJet operator*(const TaylorJet& a, double s) {
        TaylorJet r(a.order_);
        for (int k = 0; k < r.size(); ++k) r.c_[k] = a.c_[k] * s;
        return r;
    }
    friend TaylorJet operator*(double s, const TaylorJet& a) { return a * s; }
    friend TaylorJet operator/(const TaylorJet& a, double s) { return a * (1.0 / s); }
    friend TaylorJet operator/(double s, const TaylorJet& a) { return reciprocal(a) * s; }

    TaylorJet& operator+=(const TaylorJet& b) { return *this = *this + b; }
    TaylorJet& operator-=(const TaylorJet& b) { return *this = *this - b; }
    TaylorJet& operator*=(const TaylorJet& b) { return *this = *this * b; }

    // Composes an outer power series sum_k f[k] (u - u0)^k with this jet.
    static TaylorJet compose_series(const std::array<double, kMaxJetOrder + 1>& f, const TaylorJet& u) {
        TaylorJet du = u;
        du.c_[0] = 0.0;
        const int n = u.order_;
        TaylorJet r = constant(f[n], u.order_);
        for (int k = n - 1; k >= 0; --k) r = r * du + f[k];
        return r;
    }

    friend TaylorJet reciprocal(const TaylorJet& u) {
        const double u0 = u.c_[0];
        if (u0 == 0.0) throw std::domain_error("division by a jet with zero constant term");
        std::array<double, kMaxJetOrder + 1> f{};
        double p = 1.0 / u0;
        for (int k = 0; k <= u.order_; ++k) {
            f[k] = p;
            p *= -1.0 / u0;
        }
        return compose_series(f, u);
    }

    friend TaylorJet exp(const TaylorJet& u) {
        std::array<double, kMaxJetOrder + 1> f{};
        const double e0 = std::exp(u.c_[0]);
        double fac = 1.0;
        for (int k = 0; k <= u.order_; ++k) {
            f[k] = e0 / fac;
            fac *= static_cast<double>(k + 1);
        }
        return compose_series(f, u);
    }

    friend TaylorJet log(const TaylorJet& u) {
        const double u0 = u.c_[0];
        if (u0 <= 0.0) throw std::domain_error("log of a jet with non-positive constant term");
        std::array<double, kMaxJetOrder + 1> f{};
        f[0] = std::log(u0);
        double p = 1.0 / u0;
        for (int k = 1; k <= u.order_; ++k) {
            f[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / static_cast<double>(k);
            p /= u0;
        }
        return compose_series(f, u);
    }

    friend TaylorJet sqrt(const TaylorJet& u) {
        const double u0 = u.c_[0];
        if (u0 <= 0.0) throw std::domain_error("sqrt of a jet with non-positive constant term");
        std::array<double, kMaxJetOrder + 1> f{};
        f[0] = std::sqrt(u0);
        for (int k = 1; k <= u.order_; ++k)
            f[k] = f[k - 1] * (0.5 - static_cast<double>(k - 1)) / (static_cast<double>(k) * u0);
        return compose_series(f, u);
    }

    friend TaylorJet sin(const TaylorJet& u) {
        std::array<double, kMaxJetOrder + 1> f{};
        double fac = 1.0;
        for (int k = 0; k <= u.order_; ++k) {
            f[k] = std::sin(u.c_[0] + 0.5 * M_PI * k) / fac;
            fac *= static_cast<double>(k + 1);
        }
        return compose_series(f, u);
    }

    friend TaylorJet cos(const TaylorJet& u) {
        std::array<double, kMaxJetOrder + 1> f{};
        double fac = 1.0;
        for (int k = 0; k <= u.order_; ++k) {
            f[k] = std::cos(u.c_[0] + 0.5 * M_PI * k) / fac;
            fac *= static_cast<double>(k + 1);
        }
        return compose_series(f, u);
    }

    friend TaylorJet pow(const TaylorJet& u, int n) {
        if (n == 0) return constant(1.0, u.order_);
        const bool neg = n < 0;
        unsigned m = neg ? static_cast<unsigned>(-static_cast<long>(n)) : static_cast<unsigned>(n);
        TaylorJet base = u, acc = constant(1.0, u.order_);
        while (m) {
            if (m & 1u) acc = acc * base;
            base = base * base;
            m >>= 1;
        }
        return neg ? reciprocal(acc) : acc;
    }

    friend TaylorJet pow(const TaylorJet& u, double p) {
        const double u0 = u.c_[0];
        if (u0 <= 0.0) throw std::domain_error("pow of a jet with non-positive base");
        std::array<double, kMaxJetOrder + 1> f{};
        f[0] = std::pow(u0, p);
        for (int k = 1; k <= u.order_; ++k)
            f[k] = f[k - 1] * (p - static_cast<double>(k - 1)) / (static_cast<double>(k) * u0);
        return compose_series(f, u);
    }

  private:
    explicit TaylorJet(int order) : order_(order) {
        if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("truncation order must be in [0,4]");
        c_.fill(0.0);
    }

    int order_;
    std::array<double, 70> c_;
};

inline double value_of(double x) { return x; }
inline double value_of(const TaylorJet& j) { return j.value(); }

}  // namespace covgrav
