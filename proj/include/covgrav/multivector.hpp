#pragma once

// Field-equation solver blocks in the velocity chart: the U tensor coupling
// acceleration coefficients to the equations, its V pseudo-inverse, the
// particular solution F^P built from Christoffel products, the matter term
// F^m, the homogeneous trace condition on F^h, the residual of the
// Hamilton-De Donder-Weyl equation for a candidate acceleration field, and
// the integrability bracket coefficients.

#include <array>
#include <functional>
#include <random>

#include "covgrav/eh_lagrangian.hpp"

namespace covgrav {

// F_{ab;mu,nu}: ordered metric pair, full symmetric (mu,nu) block
template <class T>
using AccelFieldT = std::array<Mat4<T>, kNumPairs>;
using AccelField = AccelFieldT<double>;

struct UTensor {
    // u[ab][mu][nu][ls] = U^{ab, mu nu, ls}, ordered ab/ls, unrestricted mu nu
    std::array<std::array<std::array<std::array<double, kNumPairs>, 4>, 4>, kNumPairs> u{};
};

// The closed-form entry for arbitrary (possibly unordered) indices; the pair
// weights n(ab), n(ls) are permutation invariant.
template <class T>
T u_entry(const MetricAlgebra<T>& alg, int a, int b, int m, int n, int l, int s) {
    const auto& gi = alg.ginv;
    const double w = 0.25 * pair_mult(a, b) * pair_mult(l, s);
    T terms = -2.0 * (gi[a][b] * gi[l][s] * gi[m][n]) + gi[a][l] * gi[b][s] * gi[m][n] +
              gi[b][l] * gi[a][s] * gi[m][n] + gi[a][b] * gi[l][m] * gi[s][n] + gi[a][b] * gi[s][m] * gi[l][n] +
              gi[l][s] * gi[a][n] * gi[b][m] + gi[l][s] * gi[b][n] * gi[a][m] - gi[a][n] * gi[l][m] * gi[b][s] -
              gi[b][n] * gi[l][m] * gi[a][s] - gi[a][n] * gi[s][m] * gi[b][l] - gi[b][n] * gi[s][m] * gi[a][l];
    return alg.rho * w * terms;
}

UTensor u_tensor(const std::array<double, kNumPairs>& g);

// Accessor symmetrized over the derivative slots (mu, nu); the pair-swap
// relation U^{ab,mn,ls} = U^{ls,mn,ab} is exact on it.
template <class T>
T u_entry_sym(const MetricAlgebra<T>& alg, int a, int b, int m, int n, int l, int s) {
    return 0.5 * (u_entry(alg, a, b, m, n, l, s) + u_entry(alg, a, b, n, m, l, s));
}

// The antisymmetry relation U^{ab,mn,ls} = -U^{am,bn,ls} holds for a
// representative of U that differs from the printed expression only by terms
// annihilated by every contraction with (mu,nu)-symmetric fields. This
// returns the consistency residual of the overdetermined linear system that
// defines such a representative: zero iff the relation is satisfiable with
// the implemented symmetric part. Generic perturbations of U make it fail.
double u_antisym_relation_residual(const std::array<double, kNumPairs>& g,
                                   const double* perturbation = nullptr);

// V_{ab mu, l s c} with free lower indices (l, s, c); contracts U back to
// 3 * delta on symmetric arguments.
struct VTensor {
    // v[ab][mu][l][s][c]
    std::array<std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>, kNumPairs> v{};
};

VTensor v_tensor(const std::array<double, kNumPairs>& g);

// F^P_{ls;mu,nu} = c0 * g_{ab} (Gamma^a_{nu l} Gamma^b_{mu s} + Gamma^a_{nu s} Gamma^b_{mu l})
template <class T>
AccelFieldT<T> f_particular(const JetDataT<T>& jet, double c0) {
    auto alg = metric_algebra(jet);
    auto gam = christoffel(jet, alg);
    AccelFieldT<T> F;
    for (int ls = 0; ls < kNumPairs; ++ls) {
        const int l = kPairList[ls][0], s = kPairList[ls][1];
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                T acc = zero_like(jet.g[0]);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b)
                        acc = acc + jet.gat(a, b) * (gam[a][nu][l] * gam[b][mu][s] + gam[a][nu][s] * gam[b][mu][l]);
                F[ls][mu][nu] = acc * c0;
                F[ls][nu][mu] = F[ls][mu][nu];
            }
    }
    return F;
}

// The overall factor of F^P is stated inconsistently in the source material
// (1/2 in one place, 1 in another); it is fixed once numerically by
// minimizing the field-equation residual over a fixed random sample.
double particular_solution_factor();

template <class T>
AccelFieldT<T> f_particular(const JetDataT<T>& jet) {
    return f_particular(jet, particular_solution_factor());
}

// Residual of the field equation in the velocity chart for a candidate
// acceleration field F (per ordered pair ab):
//   dH/dg_{ab} + sum_{l<=s} g_{ls,mu} (dLm1^{ab,mu}/dg_{ls} - dLm1^{ls,mu}/dg_{ab})
//   - sum_{l<=s} F_{ls;mu,nu} U^{ls,mu nu,ab}   ( = -source^{ab} with matter )
std::array<double, kNumPairs> hdw_residual(const MetricJet& jet, const AccelField& F,
                                           const std::array<double, kNumPairs>* source = nullptr);

// Trace condition on homogeneous solutions:
//   g^{ls} (F^h_{et;l,s} + F^h_{ls;e,t} - F^h_{le;t,s} - F^h_{lt;e,s}) per ordered (e,t)
std::array<double, kNumPairs> homogeneous_residual(const AccelField& Fh, const std::array<double, kNumPairs>& g);

// contraction of an acceleration field with U: sum_{l<=s, mu nu} F_{ls;mu,nu} U^{ls,mu nu,ab}
std::array<double, kNumPairs> u_contract(const AccelField& F, const UTensor& U);

// F^m_{ls;mu,nu} = (1/rho) g_{ls} sum_{t,c} (1/n(tc)) (g_{t mu} g_{c nu} - 1/3 g_{tc} g_{mu nu}) Lm^{tc}
AccelField f_matter(const std::array<double, kNumPairs>& g, const std::array<double, kNumPairs>& Lm);

// A random solution of the homogeneous trace condition (least-squares
// projection of a random symmetric field onto the constraint null space).
AccelField random_homogeneous_solution(const std::array<double, kNumPairs>& g, std::mt19937_64& rng);

inline AccelField accel_from_d2g(const MetricJet& jet) {
    AccelField F;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) F[ab][mu][nu] = jet.d2g[ab][pair_index(mu, nu)];
    return F;
}

inline AccelField accel_add(const AccelField& A, const AccelField& B) {
    AccelField r;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) r[ab][mu][nu] = A[ab][mu][nu] + B[ab][mu][nu];
    return r;
}

inline AccelField accel_sub(const AccelField& A, const AccelField& B) {
    AccelField r;
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) r[ab][mu][nu] = A[ab][mu][nu] - B[ab][mu][nu];
    return r;
}

// Bracket coefficients of two components (gamma, rho) of the transport field
// defined by F. The dg-block coefficient is the plain antisymmetrization;
// the ddg-block needs the derivatives of F along the jet coordinates.
struct BracketCoefficients {
    std::array<double, kNumPairs> first{};   // coefficient of d/dg_{ab}
    PairVec4<double> second{};               // coefficient of d/dg_{ab,mu}
    double max_abs() const {
        double m = 0;
        for (double v : first) m = std::max(m, std::abs(v));
        for (const auto& row : second)
            for (double v : row) m = std::max(m, std::abs(v));
        return m;
    }
};

template <class FGen>
BracketCoefficients integrability_bracket(FGen&& accel_fn, const MetricJet& jet, int gamma, int rho) {
    check_index(gamma);
    check_index(rho);
    auto s = seed_jet(jet, 1, /*seed_x=*/true);
    AccelFieldT<Dual<double>> F = accel_fn(s.jet);
    const auto& lay = s.layout;

    BracketCoefficients out;
    for (int ab = 0; ab < kNumPairs; ++ab)
        out.first[ab] = F[ab][rho][gamma].v - F[ab][gamma][rho].v;

    // directional derivative of F_{ab;mu,rho} along component tau of the
    // transport field: d/dx^tau + g_{ls,tau} d/dg_{ls} + F_{ls;nu,tau} d/dg_{ls,nu}
    auto transport = [&](int ab, int mu, int crho, int tau) {
        const auto& fd = F[ab][mu][crho];
        double acc = fd.grad(lay.ix(tau));
        for (int ls = 0; ls < kNumPairs; ++ls) {
            acc += fd.grad(lay.ig(ls)) * jet.dg[ls][tau];
            for (int nu = 0; nu < 4; ++nu) acc += fd.grad(lay.idg(ls, nu)) * F[ls][nu][tau].v;
        }
        return acc;
    };
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu)
            out.second[ab][mu] = transport(ab, mu, rho, gamma) - transport(ab, mu, gamma, rho);
    return out;
}

}  // namespace covgrav
