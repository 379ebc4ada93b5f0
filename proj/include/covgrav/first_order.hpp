#pragma once

// First-order Lagrangian equivalent to the second-order theory:
//   Lbar = L0 - sum_{a<=b, l<=s} g_{ab,mu} g_{ls,nu} dLmn^{ab,mu nu}/dg_{ls},
// its momenta pbar^{ab,mu} = dLbar/dg_{ab,mu}, a regularity probe of
// d pbar / d dg, and a Newton inverse of the momentum map.

#include <array>

#include "covgrav/eh_lagrangian.hpp"

namespace covgrav {

template <class T>
T lbar(const JetDataT<T>& jet) {
    T acc = l_zero(jet);
    auto dmn = dlmn_dg(jet);  // [ls][ab][mn]
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int ls = 0; ls < kNumPairs; ++ls)
            for (int mu = 0; mu < kDim; ++mu)
                for (int nu = 0; nu < kDim; ++nu)
                    acc = acc - jet.dg[ab][mu] * jet.dg[ls][nu] * dmn[ls][ab][pair_index(mu, nu)];
    return acc;
}

// closed form: pbar^{ab,mu} = Lm1^{ab,mu} - sum_{l<=s} g_{ls,nu} dLmn^{ls,nu mu}/dg_{ab}
template <class T>
PairVec4<T> first_order_momenta(const JetDataT<T>& jet) {
    auto lm1 = l_coeff_1(jet);
    auto dmn = dlmn_dg(jet);
    PairVec4<T> r;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) {
            T acc = lm1[ab][mu];
            for (int ls = 0; ls < kNumPairs; ++ls)
                for (int nu = 0; nu < kDim; ++nu)
                    acc = acc - jet.dg[ls][nu] * dmn[ab][ls][pair_index(nu, mu)];
            r[ab][mu] = acc;
        }
    return r;
}

// differentiated form of the same map, for the cross-check
inline PairVec4<double> first_order_momenta_ad(const MetricJet& jet) {
    auto s = seed_jet(jet, 1);
    auto lb = lbar(s.jet);
    PairVec4<double> r;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) r[ab][mu] = lb.grad(s.layout.idg(ab, mu));
    return r;
}

// Jacobian d pbar / d dg as a flat 40x40 row-major block, rows (ab,mu)
inline std::array<std::array<double, 40>, 40> first_order_momentum_jacobian(const MetricJet& jet) {
    auto s = seed_jet(jet, 1);
    auto pb = first_order_momenta(s.jet);
    std::array<std::array<double, 40>, 40> J{};
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu)
            for (int ls = 0; ls < kNumPairs; ++ls)
                for (int nu = 0; nu < kDim; ++nu)
                    J[4 * ab + mu][4 * ls + nu] = pb[ab][mu].grad(s.layout.idg(ls, nu));
    return J;
}

int first_order_regularity_rank(const MetricJet& jet);

// Inverts the first-order momentum map at fixed g by Newton iteration seeded
// with the closed-form second-order inversion. Returns the recovered
// velocities; tolerance on the momentum residual.
PairVec4<double> invert_first_order_momenta(const std::array<double, kNumPairs>& g, const PairVec4<double>& pbar,
                                            double tol = 1e-11, int max_iter = 50);

}  // namespace covgrav
