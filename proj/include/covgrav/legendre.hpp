#pragma once

// Restricted and extended Legendre maps, the numerical rank of their tangent
// map, the closed-form momentum inversion, and the unified-formalism
// constraint residual blocks. Momentum packing: p2 stores the derivative of
// the Lagrangian with respect to the ordered coordinate g_{ab,(mu nu)}, i.e.
// p2 = n(mu nu) * Lmn; the single normalization point for that factor.

#include <array>
#include <optional>

#include "covgrav/eh_lagrangian.hpp"

namespace covgrav {

struct Momenta {
    PairVec4<double> p1{};                 // p^{ab,mu}
    PairMat<double> p2{};                  // p^{ab,(mu nu)}
    double p_ext = 0.0;                    // extended momentum
};

inline constexpr int kMomentumCoordinateCount = kNumPairs * kDim + kNumPairs * kNumPairs;  // 140

template <class T>
struct MomentaT {
    PairVec4<T> p1{};
    PairMat<T> p2{};
    T p_ext{};
};

template <class T>
MomentaT<T> legendre_t(const JetDataT<T>& jet) {
    auto alg = metric_algebra(jet);
    auto lmn = l_coeff_2(alg);
    auto lm1 = l_coeff_1(jet);
    MomentaT<T> m;
    m.p1 = lm1;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mn = 0; mn < kNumPairs; ++mn) m.p2[ab][mn] = lmn[ab][mn] * static_cast<double>(kPairMult[mn]);
    T acc = lagrangian_vacuum(jet, alg);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        for (int mu = 0; mu < kDim; ++mu) acc = acc - m.p1[ab][mu] * jet.dg[ab][mu];
        for (int mn = 0; mn < kNumPairs; ++mn) acc = acc - m.p2[ab][mn] * jet.d2g[ab][mn];
    }
    m.p_ext = acc;
    return m;
}

inline Momenta legendre(const MetricJet& jet) {
    auto m = legendre_t(jet);
    return Momenta{m.p1, m.p2, m.p_ext};
}

// Numerical rank of the tangent Legendre map (x, g, dg) -> (x, g, dg, p1, p2),
// singular values above 1e-10 of the largest.
int legendre_rank(const MetricJet& jet);

// V_{ab,mu}: velocities from (g, p1) by the closed 5-term contraction. The
// momentum sum runs over ordered pairs (l <= s) and unrestricted nu with the
// kernel symmetrized in (l, s); prefactor 1/(3 rho). This convention is the
// one the forward-map roundtrip singles out (the pair-sum reading is left
// implicit in the source expression; the inverse Jacobian of the forward map
// matches this kernel entrywise to rounding with no extra pair weights).
inline PairVec4<double> invert_momenta(const std::array<double, kNumPairs>& g, const PairVec4<double>& p1) {
    auto alg = metric_algebra(g);
    auto gm = unpack_metric(g);
    PairVec4<double> vel{};
    auto kern = [&gm](int a, int b, int mu, int l, int s, int nu) {
        return -2.0 * gm[a][l] * gm[b][mu] * gm[s][nu] - 2.0 * gm[a][mu] * gm[b][l] * gm[s][nu] +
               6.0 * gm[a][l] * gm[b][s] * gm[mu][nu] + gm[a][nu] * gm[b][mu] * gm[l][s] +
               gm[a][mu] * gm[b][nu] * gm[l][s];
    };
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        const double pref = 1.0 / (3.0 * alg.rho);
        for (int mu = 0; mu < 4; ++mu) {
            double acc = 0.0;
            for (int ls = 0; ls < kNumPairs; ++ls) {
                const int l = kPairList[ls][0], s = kPairList[ls][1];
                for (int nu = 0; nu < 4; ++nu)
                    acc += p1[ls][nu] * 0.5 * (kern(a, b, mu, l, s, nu) + kern(a, b, mu, s, l, nu));
            }
            vel[ab][mu] = pref * acc;
        }
    }
    return vel;
}

// Constraint residual blocks of the unified field equations evaluated at a
// jet paired with candidate momenta. Holonomy blocks are identically zero for
// jet-derived data and are reported for interface completeness.
struct UnifiedResiduals {
    std::array<double, kNumPairs> einstein{};   // the Euler-Lagrange block
    PairVec4<double> momentum_p1{};             // p1 - Lm1
    PairMat<double> momentum_p2{};              // p2 - dL/dg2
    double holonomy_first = 0.0;
    double holonomy_second = 0.0;

    double max_einstein() const {
        double m = 0;
        for (double v : einstein) m = std::max(m, std::abs(v));
        return m;
    }
    double max_momentum() const {
        double m = 0;
        for (const auto& row : momentum_p1)
            for (double v : row) m = std::max(m, std::abs(v));
        for (const auto& row : momentum_p2)
            for (double v : row) m = std::max(m, std::abs(v));
        return m;
    }
};

inline UnifiedResiduals unified_residuals(const MetricJet& jet, const Momenta& mom,
                                          const std::optional<std::array<double, kNumPairs>>& source = {}) {
    UnifiedResiduals r;
    auto on_shell = legendre(jet);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        for (int mu = 0; mu < kDim; ++mu) r.momentum_p1[ab][mu] = mom.p1[ab][mu] - on_shell.p1[ab][mu];
        for (int mn = 0; mn < kNumPairs; ++mn) r.momentum_p2[ab][mn] = mom.p2[ab][mn] - on_shell.p2[ab][mn];
    }
    r.einstein = euler_lagrange(jet);
    if (source)
        for (int ab = 0; ab < kNumPairs; ++ab) r.einstein[ab] += (*source)[ab];
    return r;
}

}  // namespace covgrav
