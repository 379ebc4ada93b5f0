#include "covgrav/multivector.hpp"

#include <Eigen/Dense>
#include <mutex>

namespace covgrav {

UTensor u_tensor(const std::array<double, kNumPairs>& g) {
    auto alg = metric_algebra(g);
    UTensor U;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        for (int ls = 0; ls < kNumPairs; ++ls) {
            const int l = kPairList[ls][0], s = kPairList[ls][1];
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) U.u[ab][m][n][ls] = u_entry(alg, a, b, m, n, l, s);
        }
    }
    return U;
}

double u_antisym_relation_residual(const std::array<double, kNumPairs>& g, const double* perturbation) {
    auto alg = metric_algebra(g);
    // For fixed spectator indices (a; l, s) the relation couples the slots
    // (b, m, n): find X with X(b,m,n) = -X(m,b,n) and X(b,m,n) + X(b,n,m)
    // = 2 Usym(b,m,n). 128 equations, 64 unknowns; the least-squares residual
    // measures how far the relation is from satisfiable.
    double worst = 0.0, scale = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int ls = 0; ls < kNumPairs; ++ls) {
            const int l = kPairList[ls][0], s = kPairList[ls][1];
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(128, 64);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(128);
            auto id = [](int b, int m, int n) { return 16 * b + 4 * m + n; };
            int row = 0;
            for (int b = 0; b < 4; ++b)
                for (int m = 0; m < 4; ++m)
                    for (int n = 0; n < 4; ++n, ++row) {
                        M(row, id(b, m, n)) += 1.0;
                        M(row, id(m, b, n)) += 1.0;
                    }
            for (int b = 0; b < 4; ++b)
                for (int m = 0; m < 4; ++m)
                    for (int n = 0; n < 4; ++n, ++row) {
                        M(row, id(b, m, n)) += 1.0;
                        M(row, id(b, n, m)) += 1.0;
                        // weight-free kernel: the n(ab) n(ls) factors are
                        // ordered-sum bookkeeping, not part of the tensor
                        double u = 2.0 * u_entry_sym(alg, a, b, m, n, l, s) / (pair_mult(a, b) * pair_mult(l, s));
                        if (perturbation) u += *perturbation;
                        rhs(row) = u;
                        scale = std::max(scale, std::abs(u));
                    }
            Eigen::VectorXd x = M.colPivHouseholderQr().solve(rhs);
            worst = std::max(worst, (M * x - rhs).cwiseAbs().maxCoeff());
        }
    return worst / (1.0 + scale);
}

VTensor v_tensor(const std::array<double, kNumPairs>& g) {
    auto alg = metric_algebra(g);
    auto gm = unpack_metric(g);
    VTensor V;
    // 8-term kernel; the last term reads g_{al be} g_{a mu} g_{bc} (the
    // variant with g_{c mu} g_{ab} cancels the fourth term identically and
    // breaks the contraction identity against U).
    auto term = [&gm](int al, int be, int mu, int a, int b, int c) {
        return gm[al][mu] * gm[be][b] * gm[a][c] + 2.0 * gm[al][mu] * gm[be][c] * gm[a][b] +
               gm[al][be] * gm[b][mu] * gm[a][c] - gm[al][be] * gm[mu][c] * gm[a][b] -
               3.0 * gm[al][a] * gm[be][c] * gm[b][mu] - 3.0 * gm[al][b] * gm[be][c] * gm[a][mu] +
               gm[al][mu] * gm[be][a] * gm[b][c] + gm[al][be] * gm[a][mu] * gm[b][c];
    };
    // stored with the (al, be) slots symmetrized; in contractions against the
    // pair-symmetric U this matches the 1/n(al be)-weighted single-order form
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int al = kPairList[ab][0], be = kPairList[ab][1];
        const double pref = 0.5 / alg.rho;
        for (int mu = 0; mu < 4; ++mu)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    for (int c = 0; c < 4; ++c)
                        V.v[ab][mu][a][b][c] = pref * (term(al, be, mu, a, b, c) + term(be, al, mu, a, b, c));
    }
    return V;
}

std::array<double, kNumPairs> u_contract(const AccelField& F, const UTensor& U) {
    std::array<double, kNumPairs> r{};
    for (int ab = 0; ab < kNumPairs; ++ab) {
        double acc = 0.0;
        for (int ls = 0; ls < kNumPairs; ++ls)
            for (int m = 0; m < 4; ++m)
                for (int n = 0; n < 4; ++n) acc += F[ls][m][n] * U.u[ls][m][n][ab];
        r[ab] = acc;
    }
    return r;
}

std::array<double, kNumPairs> hdw_residual(const MetricJet& jet, const AccelField& F,
                                           const std::array<double, kNumPairs>* source) {
    auto s = seed_jet(jet, 0);
    const auto& lay = s.layout;
    auto Hd = hamiltonian(s.jet);
    auto lm1d = l_coeff_1(s.jet);
    auto U = u_tensor(jet.g);
    auto FU = u_contract(F, U);

    std::array<double, kNumPairs> r{};
    for (int ab = 0; ab < kNumPairs; ++ab) {
        double acc = Hd.grad(lay.ig(ab));
        for (int ls = 0; ls < kNumPairs; ++ls)
            for (int mu = 0; mu < 4; ++mu)
                acc += jet.dg[ls][mu] * (lm1d[ab][mu].grad(lay.ig(ls)) - lm1d[ls][mu].grad(lay.ig(ab)));
        acc -= FU[ab];
        if (source) acc += (*source)[ab];
        r[ab] = acc;
    }
    return r;
}

std::array<double, kNumPairs> homogeneous_residual(const AccelField& Fh, const std::array<double, kNumPairs>& g) {
    auto alg = metric_algebra(g);
    std::array<double, kNumPairs> r{};
    for (int et = 0; et < kNumPairs; ++et) {
        const int e = kPairList[et][0], t = kPairList[et][1];
        double acc = 0.0;
        for (int l = 0; l < 4; ++l)
            for (int s = 0; s < 4; ++s)
                acc += alg.ginv[l][s] * (Fh[et][l][s] + Fh[pair_index(l, s)][e][t] - Fh[pair_index(l, e)][t][s] -
                                         Fh[pair_index(l, t)][e][s]);
        r[et] = acc;
    }
    return r;
}

AccelField f_matter(const std::array<double, kNumPairs>& g, const std::array<double, kNumPairs>& Lm) {
    auto alg = metric_algebra(g);
    auto gm = unpack_metric(g);
    AccelField F{};
    for (int ls = 0; ls < kNumPairs; ++ls) {
        const int l = kPairList[ls][0], s = kPairList[ls][1];
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double acc = 0.0;
                for (int t = 0; t < 4; ++t)
                    for (int c = 0; c < 4; ++c)
                        acc += (gm[t][mu] * gm[c][nu] - gm[t][c] * gm[mu][nu] / 3.0) * Lm[pair_index(t, c)] /
                               pair_mult(t, c);
                F[ls][mu][nu] = gm[l][s] * acc / alg.rho;
            }
    }
    return F;
}

namespace {
struct FactorProbe {
    double c0;
    double resid_half;
    double resid_one;
};

FactorProbe run_factor_probe() {
    std::mt19937_64 rng(0x5eedULL);
    double worst_half = 0.0, worst_one = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        auto jet = random_jet(rng, 1);
        for (double c0 : {0.5, 1.0}) {
            auto F = f_particular(jet, c0);
            auto r = hdw_residual(jet, F);
            double m = 0;
            for (double v : r) m = std::max(m, std::abs(v));
            (c0 == 0.5 ? worst_half : worst_one) = std::max(c0 == 0.5 ? worst_half : worst_one, m);
        }
    }
    FactorProbe p{worst_half <= worst_one ? 0.5 : 1.0, worst_half, worst_one};
    return p;
}

const FactorProbe& factor_probe() {
    static const FactorProbe p = run_factor_probe();
    return p;
}
}  // namespace

double particular_solution_factor() { return factor_probe().c0; }

AccelField random_homogeneous_solution(const std::array<double, kNumPairs>& g, std::mt19937_64& rng) {
    // 100 unknowns: F[ab][(mu nu) ordered]; 10 linear trace constraints
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(kNumPairs, kNumPairs * kNumPairs);
    auto alg = metric_algebra(g);
    auto col = [](int ab, int mn) { return kNumPairs * ab + mn; };
    for (int et = 0; et < kNumPairs; ++et) {
        const int e = kPairList[et][0], t = kPairList[et][1];
        for (int l = 0; l < 4; ++l)
            for (int s = 0; s < 4; ++s) {
                const double w = alg.ginv[l][s];
                C(et, col(et, pair_index(l, s))) += w;
                C(et, col(pair_index(l, s), pair_index(e, t))) += w;
                C(et, col(pair_index(l, e), pair_index(t, s))) -= w;
                C(et, col(pair_index(l, t), pair_index(e, s))) -= w;
            }
    }
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Eigen::VectorXd F0(kNumPairs * kNumPairs);
    for (int i = 0; i < F0.size(); ++i) F0(i) = uni(rng);
    // project onto the null space: F = F0 - C^+ (C F0)
    Eigen::VectorXd corr = C.completeOrthogonalDecomposition().solve(C * F0);
    Eigen::VectorXd F = F0 - corr;

    AccelField out{};
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mn = 0; mn < kNumPairs; ++mn) {
            const int m = kPairList[mn][0], n = kPairList[mn][1];
            out[ab][m][n] = F(col(ab, mn));
            out[ab][n][m] = F(col(ab, mn));
        }
    return out;
}

}  // namespace covgrav
