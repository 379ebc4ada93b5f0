#pragma once

// The Einstein-Hilbert Lagrangian density L = rho g^{ab} R_{ab} on 2-jets,
// its decomposition into an acceleration block plus a first-order remainder,
//     L = sum_{a<=b} sum_{mu,nu} Lmn^{ab,mu nu} g_{ab,mu nu} + L0,
// the velocity coefficients Lm1^{ab,mu}, the Euler-Lagrange tensors and their
// total derivatives, and the covariant Hamiltonian kernel. Index convention:
// metric pairs (ab) run over the 10 ordered coordinates; derivative indices
// written twice are full Einstein sums. Lmn stores the coefficient value
// (1/n(mu nu)) dL/dg_{ab,mu nu}, so the derivative with respect to the packed
// coordinate g_{ab,(mu nu)} is n(mu nu) * Lmn.

#include <array>

#include "covgrav/curvature.hpp"
#include "covgrav/jet_data.hpp"

namespace covgrav {

template <class T>
using PairMat = std::array<std::array<T, kNumPairs>, kNumPairs>;  // [ab][mn]
template <class T>
using PairVec4 = std::array<std::array<T, kDim>, kNumPairs>;  // [ab][mu]

template <class T>
T lagrangian_vacuum(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    auto ric = ricci(jet, alg);
    T acc = zero_like(jet.g[0]);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) acc = acc + alg.ginv[a][b] * ric[a][b];
    return alg.rho * acc;
}

template <class T>
T lagrangian_vacuum(const JetDataT<T>& jet) {
    return lagrangian_vacuum(jet, metric_algebra(jet));
}

// Lmn^{ab,mu nu} = (n(ab)/2) rho (g^{a mu} g^{b nu} + g^{a nu} g^{b mu} - 2 g^{ab} g^{mu nu})
template <class T>
PairMat<T> l_coeff_2(const MetricAlgebra<T>& alg) {
    PairMat<T> r;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        const double half_n = 0.5 * kPairMult[ab];
        for (int mn = 0; mn < kNumPairs; ++mn) {
            const int m = kPairList[mn][0], n = kPairList[mn][1];
            r[ab][mn] = alg.rho * half_n *
                        (alg.ginv[a][m] * alg.ginv[b][n] + alg.ginv[a][n] * alg.ginv[b][m] -
                         2.0 * (alg.ginv[a][b] * alg.ginv[m][n]));
        }
    }
    return r;
}

template <class T>
PairMat<T> l_coeff_2(const std::array<T, kNumPairs>& g) {
    return l_coeff_2(metric_algebra(g));
}

// L0 = rho g^{ab} { g^{cd} (g_{d m,b} Gamma^m_{ac} - g_{d m,c} Gamma^m_{ab})
//                   + Gamma^d_{ab} Gamma^c_{cd} - Gamma^d_{ac} Gamma^c_{bd} }
template <class T>
T l_zero(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    auto gam = christoffel(jet, alg);
    T acc = zero_like(jet.g[0]);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            T inner = zero_like(jet.g[0]);
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) {
                    T braces = zero_like(jet.g[0]);
                    for (int m = 0; m < 4; ++m)
                        braces = braces + jet.dgat(d, m, b) * gam[m][a][c] - jet.dgat(d, m, c) * gam[m][a][b];
                    inner = inner + alg.ginv[c][d] * braces;
                }
                for (int d = 0; d < 4; ++d)
                    inner = inner + gam[d][a][b] * gam[c][c][d] - gam[d][a][c] * gam[c][b][d];
            }
            acc = acc + alg.ginv[a][b] * inner;
        }
    return alg.rho * acc;
}

template <class T>
T l_zero(const JetDataT<T>& jet) {
    return l_zero(jet, metric_algebra(jet));
}

// all 40 derivatives dL0/dg_{ab,mu} in one seeded pass
template <class T>
PairVec4<T> dl0_ddg(const JetDataT<T>& jet) {
    auto s = seed_jet(jet, 1);
    auto L0 = l_zero(s.jet);
    PairVec4<T> r;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) r[ab][mu] = L0.grad(s.layout.idg(ab, mu));
    return r;
}

// dLmn^{ab,mn}/dg_{ls} over the 10 ordered metric coordinates
template <class T>
std::array<PairMat<T>, kNumPairs> dlmn_dg(const JetDataT<T>& jet) {
    auto s = seed_jet(jet, 0);
    auto lmn = l_coeff_2(metric_algebra(s.jet.g));
    std::array<PairMat<T>, kNumPairs> r;  // [ls][ab][mn]
    for (int ls = 0; ls < kNumPairs; ++ls)
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mn = 0; mn < kNumPairs; ++mn) r[ls][ab][mn] = lmn[ab][mn].grad(s.layout.ig(ls));
    return r;
}

// Lm1^{ab,mu} = dL0/dg_{ab,mu} - sum_nu D_nu Lmn^{ab,mu nu},
// with D_nu Lmn = sum_{l<=s} dLmn/dg_{ls} g_{ls,nu} since Lmn depends on g only.
template <class T>
PairVec4<T> l_coeff_1(const JetDataT<T>& jet) {
    PairVec4<T> r = dl0_ddg(jet);
    auto dmn = dlmn_dg(jet);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) {
            T acc = zero_like(jet.g[0]);
            for (int nu = 0; nu < kDim; ++nu) {
                const int mn = pair_index(mu, nu);
                for (int ls = 0; ls < kNumPairs; ++ls) acc = acc + dmn[ls][ab][mn] * jet.dg[ls][nu];
            }
            r[ab][mu] = r[ab][mu] - acc;
        }
    return r;
}

// EL^{ab} = -rho n(ab) (R^{ab} - 1/2 g^{ab} R)
template <class T>
std::array<T, kNumPairs> euler_lagrange(const JetDataT<T>& jet) {
    auto p = curvature_pack(jet);
    std::array<T, kNumPairs> r;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        r[ab] = p.rho * (-static_cast<double>(kPairMult[ab])) * p.einstein_upper[a][b];
    }
    return r;
}

// Defining route dL/dg_{ab} - D_mu dL/dg_{ab,mu} + sum_{mu<=nu} D_mu D_nu dL/dg_{ab,(mu nu)},
// evaluated with total derivatives on a 3-jet. Cross-check for the closed form.
inline std::array<double, kNumPairs> euler_lagrange_defining(const MetricJet& jet) {
    if (jet.order < 3) throw InsufficientJetOrder("defining Euler-Lagrange route needs a 3-jet");

    // dL/dg_{ab}: one seeded pass over the metric block of the full Lagrangian
    auto sg = seed_jet(jet, 2);
    auto L = lagrangian_vacuum(sg.jet);
    std::array<double, kNumPairs> r;
    for (int ab = 0; ab < kNumPairs; ++ab) r[ab] = L.grad(sg.layout.ig(ab));

    // dL/dg_{ab,mu} = dL0/dg_{ab,mu} (the acceleration block has no dg
    // dependence); one seeded pass covers all 40 total derivatives
    {
        auto sB = seed_jet(jet, 1, /*seed_x=*/true);
        auto B = dl0_ddg(sB.jet);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < kDim; ++mu) r[ab] -= chain_total(B[ab][mu], sB.layout, jet, mu, 1);
    }

    // + sum_{mu<=nu} D_mu D_nu (n(mu nu) Lmn^{ab,(mu nu)})
    {
        auto s2 = seed_jet(jet, 1, /*seed_x=*/true);
        auto dC = dlmn_dg(s2.jet);  // [ls][ab][mn], entries carry the outer seeds
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < kDim; ++mu)
                for (int nu = mu; nu < kDim; ++nu) {
                    const int mn = pair_index(mu, nu);
                    Dual<double> dnu_c(0.0);
                    for (int ls = 0; ls < kNumPairs; ++ls) dnu_c = dnu_c + dC[ls][ab][mn] * s2.jet.dg[ls][nu];
                    r[ab] += kPairMult[mn] * chain_total(dnu_c, s2.layout, jet, mu, 1);
                }
    }
    return r;
}

// D_tau EL^{ab} on a 3-jet: one seeded curvature pass, then the chain rule.
inline PairVec4<double> d_euler_lagrange(const MetricJet& jet) {
    if (jet.order < 3) throw InsufficientJetOrder("total derivatives of the Euler-Lagrange tensor need a 3-jet");
    auto s = seed_jet(jet, 2, /*seed_x=*/true);
    auto el = euler_lagrange(s.jet);
    PairVec4<double> r{};
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int tau = 0; tau < kDim; ++tau) r[ab][tau] = chain_total(el[ab], s.layout, jet, tau, 2);
    return r;
}

// H = rho g_{ab,mu} g_{kl,nu} Hk^{ab k l mu nu} with the kernel
// Hk = 1/4 g^{ab} g^{kl} g^{mu nu} - 1/4 g^{ak} g^{bl} g^{mu nu}
//    + 1/2 g^{ak} g^{l mu} g^{b nu} - 1/2 g^{ab} g^{l nu} g^{k mu};
// every index here runs unrestricted.
template <class T>
T hamiltonian(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    const auto& gi = alg.ginv;
    T acc = zero_like(jet.g[0]);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    for (int m = 0; m < 4; ++m)
                        for (int n = 0; n < 4; ++n) {
                            T kernel = (gi[a][b] * gi[k][l] - gi[a][k] * gi[b][l]) * (0.25 * gi[m][n]) +
                                       (gi[a][k] * gi[l][m] * gi[b][n] - gi[a][b] * gi[l][n] * gi[k][m]) * 0.5;
                            acc = acc + jet.dgat(a, b, m) * jet.dgat(k, l, n) * kernel;
                        }
                }
    return alg.rho * acc;
}

template <class T>
T hamiltonian(const JetDataT<T>& jet) {
    return hamiltonian(jet, metric_algebra(jet));
}

// Legendre-combination route for the same function:
//   H = sum n(mu nu) Lmn g_{ab,mu nu} + sum Lm1 g_{ab,mu} - L
template <class T>
T hamiltonian_legendre(const JetDataT<T>& jet) {
    auto alg = metric_algebra(jet);
    auto lmn = l_coeff_2(alg);
    auto lm1 = l_coeff_1(jet);
    T acc = -lagrangian_vacuum(jet, alg);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        for (int mn = 0; mn < kNumPairs; ++mn)
            acc = acc + lmn[ab][mn] * jet.d2g[ab][mn] * static_cast<double>(kPairMult[mn]);
        for (int mu = 0; mu < kDim; ++mu) acc = acc + lm1[ab][mu] * jet.dg[ab][mu];
    }
    return acc;
}

// Evaluated decomposition bundle used by the CLI and the report suites.
struct EHFields {
    double L = 0.0;
    double L0 = 0.0;
    PairMat<double> Lmn{};   // coefficient values (1/n) dL/dg_{ab,mu nu}
    PairVec4<double> Lm1{};  // Lm1^{ab,mu}
    std::array<double, kNumPairs> EL{};
    PairVec4<double> DEL{};  // valid when the jet carries third derivatives
    double H = 0.0;
};

inline EHFields eh_fields(const MetricJet& jet) {
    EHFields f;
    auto alg = metric_algebra(jet);
    f.L = lagrangian_vacuum(jet, alg);
    f.L0 = l_zero(jet, alg);
    f.Lmn = l_coeff_2(alg);
    f.Lm1 = l_coeff_1(jet);
    f.EL = euler_lagrange(jet);
    f.H = hamiltonian(jet, alg);
    if (jet.order >= 3) f.DEL = d_euler_lagrange(jet);
    return f;
}

}  // namespace covgrav
