#pragma once

// Pointwise metric algebra and curvature on jets: inverse metric, volume
// scalar rho = sqrt(|det g|), Christoffel symbols, Ricci tensor, scalar
// curvature and the Einstein tensor with raised indices. Total derivatives of
// the Christoffel symbols are expanded in closed form on holonomic jet data,
// so every routine works for any scalar payload (numbers, duals, Taylor jets).

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "covgrav/jet_data.hpp"

namespace covgrav {

struct SingularMetric : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

template <class T>
struct MetricAlgebra {
    Mat4<T> ginv;
    T det;
    T rho;
};

template <class T>
T det4(const Mat4<T>& m) {
    auto m3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    return m[0][0] * m3(1, 2, 3, 1, 2, 3) - m[0][1] * m3(1, 2, 3, 0, 2, 3) + m[0][2] * m3(1, 2, 3, 0, 1, 3) -
           m[0][3] * m3(1, 2, 3, 0, 1, 2);
}

template <class T>
Mat4<T> unpack_metric(const std::array<T, kNumPairs>& g) {
    Mat4<T> m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m[a][b] = g[pair_index(a, b)];
    return m;
}

template <class T>
MetricAlgebra<T> metric_algebra(const std::array<T, kNumPairs>& gpacked) {
    Mat4<T> m = unpack_metric(gpacked);
    T det = det4(m);

    double scale = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) scale = std::max(scale, std::abs(value_of(m[a][b])));
    const double floor = 1e-13 * std::max(scale * scale * scale * scale, 1.0);
    if (std::abs(value_of(det)) < floor) throw SingularMetric("metric determinant below tolerance");

    MetricAlgebra<T> r;
    r.det = det;

    // adjugate / det, exploiting symmetry of the input
    auto cof3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    const int sub[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    T inv_det = one_like(det) / det;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const int* rr = sub[j];
            const int* cc = sub[i];
            T c = cof3(rr[0], rr[1], rr[2], cc[0], cc[1], cc[2]);
            if ((i + j) % 2 != 0) c = -c;
            r.ginv[i][j] = c * inv_det;
            r.ginv[j][i] = r.ginv[i][j];
        }

    // |det| taken before the square root; Lorentz signature makes det < 0
    using std::sqrt;
    T abs_det = value_of(det) < 0.0 ? T(-det) : det;
    r.rho = sqrt(abs_det);
    return r;
}

template <class T>
MetricAlgebra<T> metric_algebra(const JetDataT<T>& jet) {
    return metric_algebra(jet.g);
}

// Gamma^la_{mu nu} = 1/2 g^{la rho} (g_{nu rho,mu} + g_{rho mu,nu} - g_{mu nu,rho})
template <class T>
std::array<Mat4<T>, 4> christoffel(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    std::array<Mat4<T>, 4> gam;
    for (int la = 0; la < 4; ++la)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                T acc = zero_like(jet.g[0]);
                for (int rho = 0; rho < 4; ++rho)
                    acc = acc + alg.ginv[la][rho] *
                                    (jet.dgat(nu, rho, mu) + jet.dgat(rho, mu, nu) - jet.dgat(mu, nu, rho));
                gam[la][mu][nu] = acc * 0.5;
                gam[la][nu][mu] = gam[la][mu][nu];
            }
    return gam;
}

template <class T>
std::array<Mat4<T>, 4> christoffel(const JetDataT<T>& jet) {
    return christoffel(jet, metric_algebra(jet));
}

// D_ga g^{la rho} = -g^{la a} g_{ab,ga} g^{b rho}
template <class T>
std::array<Mat4<T>, 4> dginv(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    std::array<Mat4<T>, 4> r;
    for (int ga = 0; ga < 4; ++ga)
        for (int la = 0; la < 4; ++la)
            for (int rho = la; rho < 4; ++rho) {
                T acc = zero_like(jet.g[0]);
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) acc = acc + alg.ginv[la][a] * jet.dgat(a, b, ga) * alg.ginv[b][rho];
                r[ga][la][rho] = -acc;
                r[ga][rho][la] = r[ga][la][rho];
            }
    return r;
}

// D_ga Gamma^la_{mu nu} in closed form on holonomic data (the total and
// partial derivatives of Gamma coincide there).
template <class T>
struct ChristoffelJet {
    std::array<Mat4<T>, 4> gamma;          // [la][mu][nu]
    std::array<std::array<Mat4<T>, 4>, 4> dgamma;  // [ga][la][mu][nu]
};

template <class T>
ChristoffelJet<T> christoffel_jet(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    if (jet.order < 2) throw InsufficientJetOrder("Christoffel total derivatives need second derivatives of g");
    ChristoffelJet<T> r;
    r.gamma = christoffel(jet, alg);
    auto dgi = dginv(jet, alg);
    for (int ga = 0; ga < 4; ++ga)
        for (int la = 0; la < 4; ++la)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = mu; nu < 4; ++nu) {
                    T acc = zero_like(jet.g[0]);
                    for (int rho = 0; rho < 4; ++rho) {
                        acc = acc + dgi[ga][la][rho] *
                                        (jet.dgat(nu, rho, mu) + jet.dgat(rho, mu, nu) - jet.dgat(mu, nu, rho));
                        acc = acc + alg.ginv[la][rho] * (jet.d2gat(nu, rho, mu, ga) + jet.d2gat(rho, mu, nu, ga) -
                                                         jet.d2gat(mu, nu, rho, ga));
                    }
                    r.dgamma[ga][la][mu][nu] = acc * 0.5;
                    r.dgamma[ga][la][nu][mu] = r.dgamma[ga][la][mu][nu];
                }
    return r;
}

// R_{ab} = D_ga Gamma^ga_{ab} - D_a Gamma^ga_{ga b}
//        + Gamma^ga_{ab} Gamma^de_{de ga} - Gamma^ga_{de b} Gamma^de_{a ga}
template <class T>
Mat4<T> ricci(const JetDataT<T>& jet, const MetricAlgebra<T>& alg) {
    auto cj = christoffel_jet(jet, alg);
    Mat4<T> r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            T acc = zero_like(jet.g[0]);
            for (int ga = 0; ga < 4; ++ga) {
                acc = acc + cj.dgamma[ga][ga][a][b] - cj.dgamma[a][ga][ga][b];
                for (int de = 0; de < 4; ++de)
                    acc = acc + cj.gamma[ga][a][b] * cj.gamma[de][de][ga] - cj.gamma[ga][de][b] * cj.gamma[de][a][ga];
            }
            r[a][b] = acc;
        }
    return r;
}

template <class T>
Mat4<T> ricci(const JetDataT<T>& jet) {
    return ricci(jet, metric_algebra(jet));
}

template <class T>
struct CurvaturePackT {
    Mat4<T> ginv;
    T det;
    T rho;
    std::array<Mat4<T>, 4> gamma;
    Mat4<T> ricci;
    T scalar;
    Mat4<T> einstein_upper;  // G^{ab} = R^{ab} - 1/2 g^{ab} R
};

using CurvaturePack = CurvaturePackT<double>;

template <class T>
CurvaturePackT<T> curvature_pack(const JetDataT<T>& jet) {
    auto alg = metric_algebra(jet);
    CurvaturePackT<T> p;
    p.ginv = alg.ginv;
    p.det = alg.det;
    p.rho = alg.rho;
    p.gamma = christoffel(jet, alg);
    p.ricci = ricci(jet, alg);
    T R = zero_like(jet.g[0]);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) R = R + alg.ginv[a][b] * p.ricci[a][b];
    p.scalar = R;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            T up = zero_like(jet.g[0]);
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) up = up + alg.ginv[a][m] * alg.ginv[b][n] * p.ricci[m][n];
            p.einstein_upper[a][b] = up - alg.ginv[a][b] * R * 0.5;
        }
    return p;
}

// scalar curvature and Einstein tensor only
template <class T>
std::pair<T, Mat4<T>> scalar_and_einstein(const JetDataT<T>& jet) {
    auto p = curvature_pack(jet);
    return {p.scalar, p.einstein_upper};
}

inline std::array<std::array<double, 4>, 4> invert_metric(const std::array<double, kNumPairs>& g) {
    return metric_algebra(g).ginv;
}

}  // namespace covgrav
