#pragma once

// Canonical lifts of spacetime vector fields to the bundle of metrics, their
// jet prolongations, the diffeomorphism-invariance residual of the
// Lagrangian, and the conserved current: the coefficient vector density S^mu
// obtained by contracting the lift with the Poincare-Cartan coefficients and
// pulling back along the prolonged section.

#include <array>

#include "covgrav/eh_lagrangian.hpp"
#include "covgrav/metric_family.hpp"

namespace covgrav {

// derivatives of the field components f^nu(x) at a point (or as Taylor jets)
template <class T>
struct VectorFieldJets {
    std::array<T, 4> f{};
    std::array<std::array<T, 4>, 4> df{};                               // df[nu][al] = d f^nu / dx^al
    std::array<std::array<std::array<T, 4>, 4>, 4> d2f{};               // d2f[nu][al][mu], symmetric al mu
    std::array<std::array<std::array<std::array<T, 4>, 4>, 4>, 4> d3f{};  // d3f[nu][al][mu][tau]
};

template <class T>
struct LiftedFieldT {
    std::array<T, kNumPairs> Yab{};   // coefficient on g_{ab}
    PairVec4<T> Yabm{};               // coefficient on g_{ab,mu}
    std::array<Mat4<T>, kNumPairs> Yabmn{};  // coefficient on g_{ab,(mu nu)}, symmetrized
};

using LiftedField = LiftedFieldT<double>;

// Y_{ab} = -(f^n_{,a} g_{nb} + f^n_{,b} g_{na});
// Y_{ab m} adds the transport of the first derivatives; the second
// prolongation follows the standard recursion
// Y_{ab,mn} = D_n Y_{ab m} - g_{ab,ms} f^s_{,n}.
template <class T>
LiftedFieldT<T> canonical_lift(const VectorFieldJets<T>& Z, const JetDataT<T>& jet) {
    LiftedFieldT<T> L;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        T acc = zero_like(jet.g[0]);
        for (int n = 0; n < 4; ++n) acc = acc + Z.df[n][a] * jet.gat(n, b) + Z.df[n][b] * jet.gat(n, a);
        L.Yab[ab] = -acc;

        for (int m = 0; m < 4; ++m) {
            T acc1 = zero_like(jet.g[0]);
            for (int n = 0; n < 4; ++n)
                acc1 = acc1 + Z.d2f[n][a][m] * jet.gat(n, b) + Z.d2f[n][b][m] * jet.gat(a, n) +
                       Z.df[n][a] * jet.dgat(n, b, m) + Z.df[n][b] * jet.dgat(a, n, m) +
                       Z.df[n][m] * jet.dgat(a, b, n);
            L.Yabm[ab][m] = -acc1;
        }

        for (int m = 0; m < 4; ++m)
            for (int n2 = 0; n2 < 4; ++n2) {
                // D_tau Y_{ab m} expanded on holonomic data, tau = n2
                T acc2 = zero_like(jet.g[0]);
                for (int n = 0; n < 4; ++n) {
                    acc2 = acc2 + Z.d3f[n][a][m][n2] * jet.gat(n, b) + Z.d2f[n][a][m] * jet.dgat(n, b, n2) +
                           Z.d3f[n][b][m][n2] * jet.gat(a, n) + Z.d2f[n][b][m] * jet.dgat(a, n, n2) +
                           Z.d2f[n][a][n2] * jet.dgat(n, b, m) + Z.df[n][a] * jet.d2gat(n, b, m, n2) +
                           Z.d2f[n][b][n2] * jet.dgat(a, n, m) + Z.df[n][b] * jet.d2gat(a, n, m, n2) +
                           Z.d2f[n][m][n2] * jet.dgat(a, b, n) + Z.df[n][m] * jet.d2gat(a, b, n, n2);
                }
                T val = -acc2;
                for (int s = 0; s < 4; ++s) val = val - jet.d2gat(a, b, m, s) * Z.df[s][n2];
                L.Yabmn[ab][m][n2] = val;
            }
        // symmetrize the second-prolongation block for the ordered coordinates
        for (int m = 0; m < 4; ++m)
            for (int n2 = m + 1; n2 < 4; ++n2) {
                T s = (L.Yabmn[ab][m][n2] + L.Yabmn[ab][n2][m]) * 0.5;
                L.Yabmn[ab][m][n2] = s;
                L.Yabmn[ab][n2][m] = s;
            }
    }
    return L;
}

// directional derivative of the vacuum Lagrangian along the prolonged lift;
// vanishes for every Z by diffeomorphism invariance
struct SymmetryResidual {
    double residual;
    double scale;  // largest contribution magnitude, for relative comparison
};

SymmetryResidual lagrangian_symmetry_residual(const VectorFieldJets<double>& Z, const MetricJet& jet);

// f-jets from parsed vector-field components
VectorFieldJets<double> vector_field_jets(const VectorFieldFamily& vf,
                                          const std::array<std::string, 4>& coord_names,
                                          const std::array<double, 4>& point);
VectorFieldJets<TaylorJet> vector_field_jets_taylor(const VectorFieldFamily& vf,
                                                    const std::array<std::string, 4>& coord_names,
                                                    const std::array<double, 4>& point, int jet_order);

struct NoetherCurrent {
    std::array<double, 4> S{};
    double divergence = 0.0;
};

// S^mu and its divergence at `point`, with every ingredient carried as an
// order-1 Taylor jet in x so the divergence is a coefficient read-off.
NoetherCurrent noether_current(const VectorFieldFamily& Z, const MetricFamily& fam,
                               const std::array<double, 4>& point);

inline double divergence_residual(const VectorFieldFamily& Z, const MetricFamily& fam,
                                  const std::array<double, 4>& point) {
    return noether_current(Z, fam, point).divergence;
}

// Generic scalar version used by the current assembly and by tests. After
// pulling the contraction i(j^1 Y) Theta back along the prolonged section
// (dg_{ab} -> dpsi_{ab,sigma} dx^sigma and dx^e ^ d2x_{nu sigma} =
// delta^e_sigma d3x_nu - delta^e_nu d3x_sigma), the coefficient of d3x_rho
// collapses to the transport term f^rho L plus the evolutionary
// characteristic Q = Y - f^sigma dg (the negative metric Lie derivative)
// contracted with the velocity and acceleration coefficient blocks.
template <class T>
std::array<T, 4> noether_current_values(const VectorFieldJets<T>& Z, const JetDataT<T>& jet) {
    auto alg = metric_algebra(jet);
    auto lift = canonical_lift(Z, jet);
    auto lmn = l_coeff_2(alg);
    auto lm1 = l_coeff_1(jet);
    T L = lagrangian_vacuum(jet, alg);

    std::array<T, 4> S;
    for (int rho = 0; rho < 4; ++rho) {
        T acc = L * Z.f[rho];
        for (int ab = 0; ab < kNumPairs; ++ab) {
            T q = lift.Yab[ab];
            for (int s = 0; s < 4; ++s) q = q - Z.f[s] * jet.dg[ab][s];
            acc = acc + q * lm1[ab][rho];
            for (int la = 0; la < 4; ++la) {
                T q1 = lift.Yabm[ab][la];
                for (int s = 0; s < 4; ++s) q1 = q1 - Z.f[s] * jet.d2gat(kPairList[ab][0], kPairList[ab][1], la, s);
                acc = acc + q1 * lmn[ab][pair_index(la, rho)];
            }
        }
        S[rho] = acc;
    }
    return S;
}

}  // namespace covgrav
