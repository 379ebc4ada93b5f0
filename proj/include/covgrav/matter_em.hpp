#pragma once

// Electromagnetic energy-matter source: L_m = rho F_{mu nu} F^{mu nu} with
// the field components given on the base manifold, the source tensor
// Lm^{ab} = dL_m/dg_{ab}, the stress-energy-momentum tensor, and a sampling
// probe for the degree of a Lagrangian (the lowest jet order whose vertical
// directions annihilate its momentum coefficient functions).

#include <array>
#include <random>

#include "covgrav/eh_lagrangian.hpp"

namespace covgrav {

struct EMField {
    std::array<std::array<double, 4>, 4> F{};  // antisymmetric F_{mu nu}
    double c = 1.0;
    double G = 1.0;

    void set(int mu, int nu, double v) {
        F[mu][nu] = v;
        F[nu][mu] = -v;
    }
};

template <class T>
T em_lagrangian(const std::array<T, kNumPairs>& g, const EMField& em) {
    auto alg = metric_algebra(g);
    T acc = zero_like(g[0]);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    acc = acc + alg.ginv[m][a] * alg.ginv[n][b] * (em.F[m][n] * em.F[a][b]);
    return alg.rho * acc;
}

// Lm^{ab} = dL_m/dg_{ab} over the 10 ordered metric coordinates
inline std::array<double, kNumPairs> em_source(const std::array<double, kNumPairs>& g, const EMField& em) {
    MetricJet jet;
    jet.order = 0;
    jet.g = g;
    auto s = seed_jet(jet, 0);
    auto L = em_lagrangian(s.jet.g, em);
    std::array<double, kNumPairs> r{};
    for (int ab = 0; ab < kNumPairs; ++ab) r[ab] = L.grad(s.layout.ig(ab));
    return r;
}

// T_{mu nu} from the source tensor: T^{ab} = c^4 / (8 pi G rho n(ab)) Lm^{ab},
// lowered with the metric. Trace-free for the electromagnetic source.
std::array<std::array<double, 4>, 4> stress_energy(const std::array<double, kNumPairs>& g, const EMField& em);

// closed-form route (c^4/4 pi G)(1/4 g_{mu nu} F^{ab} F_{ab} - g^{ab} F_{mu a} F_{nu b})
std::array<std::array<double, 4>, 4> stress_energy_closed(const std::array<double, kNumPairs>& g,
                                                          const EMField& em);

struct DegreeProbeOptions {
    int samples = 3;
    int directions = 4;
    std::uint64_t seed = 2024;
    double tol = 1e-10;
};

namespace degree_detail {

// One evaluation of f with three seed layers, largest innermost so the deep
// vectors stay flat: inner = the 100 second-derivative coordinates, mid = the
// 154 coordinates (x, g, dg, d2g) feeding the D_nu chain, outer = one
// directional slot. Returns values and directional derivatives of the
// momentum coefficients f2^{ab,(mn)} and f1^{ab,mu}.
using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

struct DirectionalMoments {
    PairMat<double> f2_val{}, f2_dir{};
    PairVec4<double> f1_val{}, f1_dir{};
};

template <class F>
DirectionalMoments moments_along(F&& f, const MetricJet& jet, const std::vector<double>& dir) {
    if (jet.order < 3) throw InsufficientJetOrder("degree probe needs third derivatives");
    SeedLayout mid;  // (x, g, dg, d2g)
    mid.x_off = 0;
    mid.g_off = 4;
    mid.dg_off = 14;
    mid.d2g_off = 54;
    mid.dim = 154;
    SeedLayout full;  // direction layout over all 354 coordinates
    full.x_off = 0;
    full.g_off = 4;
    full.dg_off = 14;
    full.d2g_off = 54;
    full.d3g_off = 154;
    full.dim = 354;
    const int inner_dim = kNumPairs * kNumPairs;

    auto mk = [&](double v, int inner_slot, int mid_slot, double w) {
        D1 x1 = inner_slot >= 0 ? D1::seeded(v, inner_slot, inner_dim) : D1(v);
        D2 x2 = mid_slot >= 0 ? D2::seeded(std::move(x1), mid_slot, mid.dim) : D2(std::move(x1));
        D3 x3(std::move(x2));
        if (w != 0.0) x3.d.assign(1, one_like(x3.v) * w);
        return x3;
    };

    JetDataT<D3> J;
    J.order = jet.order;
    for (int m = 0; m < kDim; ++m) J.x[m] = mk(jet.x[m], -1, mid.ix(m), dir[full.ix(m)]);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        J.g[ab] = mk(jet.g[ab], -1, mid.ig(ab), dir[full.ig(ab)]);
        for (int m = 0; m < kDim; ++m)
            J.dg[ab][m] = mk(jet.dg[ab][m], -1, mid.idg(ab, m), dir[full.idg(ab, m)]);
        for (int mn = 0; mn < kNumPairs; ++mn)
            J.d2g[ab][mn] = mk(jet.d2g[ab][mn], kNumPairs * ab + mn, mid.id2g(ab, mn), dir[full.id2g(ab, mn)]);
        for (int t = 0; t < kNumTriples; ++t) J.d3g[ab][t] = mk(jet.d3g[ab][t], -1, -1, dir[full.id3g(ab, t)]);
    }

    D3 fd = f(J);
    DirectionalMoments out;
    const D2 val2 = fd.v;
    const D2 dir2 = fd.grad(0);

    auto inner_at = [&](const D1& x, int slot) { return x.grad(slot); };
    for (int ab = 0; ab < kNumPairs; ++ab) {
        for (int mn = 0; mn < kNumPairs; ++mn) {
            const int slot = kNumPairs * ab + mn;
            out.f2_val[ab][mn] = inner_at(val2.v, slot) / kPairMult[mn];
            out.f2_dir[ab][mn] = inner_at(dir2.v, slot) / kPairMult[mn];
        }
        for (int mu = 0; mu < kDim; ++mu) {
            out.f1_val[ab][mu] = val2.grad(mid.idg(ab, mu)).v;
            out.f1_dir[ab][mu] = dir2.grad(mid.idg(ab, mu)).v;
        }
    }

    // D_nu f2 with directional tracking: dual-number chain over the mid slots
    auto dual_of = [&](const D3& x) { return D1{x.v.v.v, {x.grad(0).v.v}}; };
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu)
            for (int nu = 0; nu < kDim; ++nu) {
                const int slot = kNumPairs * ab + pair_index(mu, nu);
                const double invn = 1.0 / kPairMult[pair_index(mu, nu)];
                auto q = [&](int mid_slot) {
                    return D1{inner_at(val2.grad(mid_slot), slot) * invn,
                              {inner_at(dir2.grad(mid_slot), slot) * invn}};
                };
                D1 acc = q(mid.ix(nu));
                for (int ls = 0; ls < kNumPairs; ++ls) {
                    acc = acc + q(mid.ig(ls)) * dual_of(J.dg[ls][nu]);
                    for (int m2 = 0; m2 < kDim; ++m2)
                        acc = acc + q(mid.idg(ls, m2)) * dual_of(J.d2g[ls][pair_index(m2, nu)]);
                    for (int m2 = 0; m2 < kDim; ++m2)
                        for (int n2 = m2; n2 < kDim; ++n2)
                            acc = acc + q(mid.id2g(ls, pair_index(m2, n2))) *
                                            dual_of(J.d3g[ls][triple_index(m2, n2, nu)]);
                }
                out.f1_val[ab][mu] -= acc.v;
                out.f1_dir[ab][mu] -= acc.grad(0);
            }
    return out;
}

}  // namespace degree_detail

// Statistical estimate of the degree: samples directional derivatives of the
// momentum coefficients along random vertical directions of each order.
// Returns 0 when the coefficients vanish identically on the samples, the
// smallest order certified by all sampled directions otherwise, and 4 when
// no smaller order certifies.
template <class F>
int degree_probe(F&& f, const DegreeProbeOptions& opts = {}) {
    auto rng = seeded_rng(opts.seed, 77);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    // block offsets in the 354-coordinate direction layout
    const int block_off[4] = {4, 14, 54, 154};
    const int block_len[4] = {10, 40, 100, 200};

    double moment_scale = 0.0;
    std::array<double, 4> worst{};  // worst directional derivative per seed block
    for (int trial = 0; trial < opts.samples; ++trial) {
        auto jet = random_jet(rng);
        for (int blk = 0; blk < 4; ++blk)
            for (int dir = 0; dir < opts.directions; ++dir) {
                std::vector<double> v(354, 0.0);
                for (int k = 0; k < block_len[blk]; ++k) v[block_off[blk] + k] = uni(rng);
                auto m = degree_detail::moments_along(f, jet, v);
                for (int ab = 0; ab < kNumPairs; ++ab) {
                    for (int mn = 0; mn < kNumPairs; ++mn) {
                        worst[blk] = std::max(worst[blk], std::abs(m.f2_dir[ab][mn]));
                        moment_scale = std::max(moment_scale, std::abs(m.f2_val[ab][mn]));
                    }
                    for (int mu = 0; mu < kDim; ++mu) {
                        worst[blk] = std::max(worst[blk], std::abs(m.f1_dir[ab][mu]));
                        moment_scale = std::max(moment_scale, std::abs(m.f1_val[ab][mu]));
                    }
                }
            }
    }
    if (moment_scale < opts.tol) return 0;
    // degree s certified when every direction of order >= s annihilates
    for (int s = 1; s <= 3; ++s) {
        double m = 0;
        for (int blk = s; blk < 4; ++blk) m = std::max(m, worst[blk]);
        if (m < opts.tol) return s;
    }
    return 4;
}

}  // namespace covgrav
