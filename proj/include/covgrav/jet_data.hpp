#pragma once

// Coordinates of a point of the third-order jet of metric sections: base
// point, metric components, and their first, second and third derivatives in
// symmetric packing. Templated on the scalar payload so the same field
// formulas evaluate on plain numbers, seeded duals, and Taylor jets.

#include <array>
#include <random>
#include <stdexcept>

#include "covgrav/dual.hpp"
#include "covgrav/sym_index.hpp"
#include "covgrav/taylor_jet.hpp"

namespace covgrav {

struct InsufficientJetOrder : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
struct JetDataT {
    int order = 3;  // how many derivative levels are populated (0..3)
    std::array<T, kDim> x{};
    std::array<T, kNumPairs> g{};
    std::array<std::array<T, kDim>, kNumPairs> dg{};           // g_{ab,mu}
    std::array<std::array<T, kNumPairs>, kNumPairs> d2g{};     // g_{ab,(mu nu)}
    std::array<std::array<T, kNumTriples>, kNumPairs> d3g{};   // g_{ab,(mu nu la)}

    const T& gat(int a, int b) const { return g[pair_index(a, b)]; }
    const T& dgat(int a, int b, int mu) const { return dg[pair_index(a, b)][mu]; }
    const T& d2gat(int a, int b, int mu, int nu) const { return d2g[pair_index(a, b)][pair_index(mu, nu)]; }
    const T& d3gat(int a, int b, int mu, int nu, int la) const {
        return d3g[pair_index(a, b)][triple_index(mu, nu, la)];
    }
};

using MetricJet = JetDataT<double>;

template <class T>
JetDataT<T> promote_jet(const MetricJet& jet) {
    JetDataT<T> r;
    r.order = jet.order;
    for (int m = 0; m < kDim; ++m) r.x[m] = T(jet.x[m]);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        r.g[ab] = T(jet.g[ab]);
        for (int m = 0; m < kDim; ++m) r.dg[ab][m] = T(jet.dg[ab][m]);
        for (int mn = 0; mn < kNumPairs; ++mn) r.d2g[ab][mn] = T(jet.d2g[ab][mn]);
        for (int t = 0; t < kNumTriples; ++t) r.d3g[ab][t] = T(jet.d3g[ab][t]);
    }
    return r;
}

// ---------------------------------------------------------------------------
// random jets for property suites: g = A diag(-1,1,1,1) A^T with
// A = I + 0.2 N(0,1), derivative blocks uniform in [-1,1]
// ---------------------------------------------------------------------------

inline MetricJet random_jet(std::mt19937_64& rng, int order = 3) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    MetricJet jet;
    jet.order = order;
    for (int m = 0; m < kDim; ++m) jet.x[m] = uni(rng);
    double A[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) A[i][j] = (i == j ? 1.0 : 0.0) + 0.2 * gauss(rng);
    const double eta[4] = {-1.0, 1.0, 1.0, 1.0};
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += A[a][k] * eta[k] * A[b][k];
            jet.g[pair_index(a, b)] = s;
        }
    for (int ab = 0; ab < kNumPairs; ++ab) {
        if (order >= 1)
            for (int m = 0; m < kDim; ++m) jet.dg[ab][m] = uni(rng);
        if (order >= 2)
            for (int mn = 0; mn < kNumPairs; ++mn) jet.d2g[ab][mn] = uni(rng);
        if (order >= 3)
            for (int t = 0; t < kNumTriples; ++t) jet.d3g[ab][t] = uni(rng);
    }
    return jet;
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream, std::uint64_t(0x9e3779b97f4a7c15ULL)};
    return std::mt19937_64(seq);
}

// ---------------------------------------------------------------------------
// Seeding jet coordinates with dual slots. Blocks are seeded cumulatively up
// to max_block (0 = g, 1 = +dg, 2 = +d2g, 3 = +d3g); the base point gets its
// own flag. Slot layout is reported so callers can read gradients back.
// ---------------------------------------------------------------------------

struct SeedLayout {
    int dim = 0;
    int x_off = -1, g_off = -1, dg_off = -1, d2g_off = -1, d3g_off = -1;
    int ix(int mu) const { return x_off + mu; }
    int ig(int ab) const { return g_off + ab; }
    int idg(int ab, int mu) const { return dg_off + 4 * ab + mu; }
    int id2g(int ab, int mn) const { return d2g_off + kNumPairs * ab + mn; }
    int id3g(int ab, int t) const { return d3g_off + kNumTriples * ab + t; }
};

template <class S>
struct SeededJet {
    JetDataT<Dual<S>> jet;
    SeedLayout layout;
};

template <class S>
SeededJet<S> seed_jet(const JetDataT<S>& base, int max_block, bool seed_x = false) {
    SeedLayout lay;
    int dim = 0;
    if (seed_x) {
        lay.x_off = dim;
        dim += kDim;
    }
    if (max_block >= 0) {
        lay.g_off = dim;
        dim += kNumPairs;
    }
    if (max_block >= 1) {
        lay.dg_off = dim;
        dim += kNumPairs * kDim;
    }
    if (max_block >= 2) {
        lay.d2g_off = dim;
        dim += kNumPairs * kNumPairs;
    }
    if (max_block >= 3) {
        lay.d3g_off = dim;
        dim += kNumPairs * kNumTriples;
    }
    lay.dim = dim;

    SeededJet<S> r;
    r.layout = lay;
    r.jet.order = base.order;
    for (int m = 0; m < kDim; ++m)
        r.jet.x[m] = seed_x ? Dual<S>::seeded(base.x[m], lay.ix(m), dim) : Dual<S>(base.x[m]);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        r.jet.g[ab] = max_block >= 0 ? Dual<S>::seeded(base.g[ab], lay.ig(ab), dim) : Dual<S>(base.g[ab]);
        for (int m = 0; m < kDim; ++m)
            r.jet.dg[ab][m] =
                max_block >= 1 ? Dual<S>::seeded(base.dg[ab][m], lay.idg(ab, m), dim) : Dual<S>(base.dg[ab][m]);
        for (int mn = 0; mn < kNumPairs; ++mn)
            r.jet.d2g[ab][mn] =
                max_block >= 2 ? Dual<S>::seeded(base.d2g[ab][mn], lay.id2g(ab, mn), dim) : Dual<S>(base.d2g[ab][mn]);
        for (int t = 0; t < kNumTriples; ++t)
            r.jet.d3g[ab][t] =
                max_block >= 3 ? Dual<S>::seeded(base.d3g[ab][t], lay.id3g(ab, t), dim) : Dual<S>(base.d3g[ab][t]);
    }
    return r;
}

// Seeds exactly one coordinate block (0 = g, 1 = dg, 2 = d2g, 3 = d3g).
template <class S>
SeededJet<S> seed_jet_single_block(const JetDataT<S>& base, int block) {
    SeedLayout lay;
    int dim = 0;
    if (block == 0) {
        lay.g_off = 0;
        dim = kNumPairs;
    } else if (block == 1) {
        lay.dg_off = 0;
        dim = kNumPairs * kDim;
    } else if (block == 2) {
        lay.d2g_off = 0;
        dim = kNumPairs * kNumPairs;
    } else {
        lay.d3g_off = 0;
        dim = kNumPairs * kNumTriples;
    }
    lay.dim = dim;
    SeededJet<S> r;
    r.layout = lay;
    r.jet.order = base.order;
    for (int m = 0; m < kDim; ++m) r.jet.x[m] = Dual<S>(base.x[m]);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        r.jet.g[ab] = block == 0 ? Dual<S>::seeded(base.g[ab], lay.ig(ab), dim) : Dual<S>(base.g[ab]);
        for (int m = 0; m < kDim; ++m)
            r.jet.dg[ab][m] =
                block == 1 ? Dual<S>::seeded(base.dg[ab][m], lay.idg(ab, m), dim) : Dual<S>(base.dg[ab][m]);
        for (int mn = 0; mn < kNumPairs; ++mn)
            r.jet.d2g[ab][mn] =
                block == 2 ? Dual<S>::seeded(base.d2g[ab][mn], lay.id2g(ab, mn), dim) : Dual<S>(base.d2g[ab][mn]);
        for (int t = 0; t < kNumTriples; ++t)
            r.jet.d3g[ab][t] =
                block == 3 ? Dual<S>::seeded(base.d3g[ab][t], lay.id3g(ab, t), dim) : Dual<S>(base.d3g[ab][t]);
    }
    return r;
}

// Directional seeding with a single dual slot; direction entries follow the
// SeedLayout of seed_jet(base, 3, true).
template <class S>
JetDataT<Dual<S>> seed_jet_directional(const JetDataT<S>& base, const std::vector<double>& dir) {
    SeedLayout lay;
    lay.x_off = 0;
    lay.g_off = 4;
    lay.dg_off = 14;
    lay.d2g_off = 54;
    lay.d3g_off = 154;
    lay.dim = 354;
    if (dir.size() != 354) throw std::invalid_argument("direction must have 354 entries");
    JetDataT<Dual<S>> r;
    r.order = base.order;
    auto mk = [&](const S& v, int slot) {
        Dual<S> d(v);
        if (dir[slot] != 0.0) d.d.assign(1, one_like(v) * dir[slot]);
        return d;
    };
    for (int m = 0; m < kDim; ++m) r.x[m] = mk(base.x[m], lay.ix(m));
    for (int ab = 0; ab < kNumPairs; ++ab) {
        r.g[ab] = mk(base.g[ab], lay.ig(ab));
        for (int m = 0; m < kDim; ++m) r.dg[ab][m] = mk(base.dg[ab][m], lay.idg(ab, m));
        for (int mn = 0; mn < kNumPairs; ++mn) r.d2g[ab][mn] = mk(base.d2g[ab][mn], lay.id2g(ab, mn));
        for (int t = 0; t < kNumTriples; ++t) r.d3g[ab][t] = mk(base.d3g[ab][t], lay.id3g(ab, t));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Coordinate total derivative: chain the seeded gradient of f with the
// next-order jet data,
//   D_tau f = df/dx^tau + sum g_{ab,tau} df/dg_{ab}
//           + sum g_{ab,mu tau} df/dg_{ab,mu} + sum g_{ab,mu nu tau} df/dg_{ab,mu nu}.
// f declares the highest derivative block it reads (dep_order in 0..2); the
// jet must carry one order more.
// ---------------------------------------------------------------------------

// Contracts an already-seeded gradient with the next-order jet data. The
// layout must come from seed_jet(jet, dep_order, /*seed_x=*/true).
template <class S>
S chain_total(const Dual<S>& fd, const SeedLayout& lay, const JetDataT<S>& jet, int tau, int dep_order) {
    S acc = fd.grad(lay.ix(tau));
    for (int ab = 0; ab < kNumPairs; ++ab) acc = acc + fd.grad(lay.ig(ab)) * jet.dg[ab][tau];
    if (dep_order >= 1)
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < kDim; ++mu)
                acc = acc + fd.grad(lay.idg(ab, mu)) * jet.d2g[ab][pair_index(mu, tau)];
    if (dep_order >= 2)
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < kDim; ++mu)
                for (int nu = mu; nu < kDim; ++nu)
                    acc = acc + fd.grad(lay.id2g(ab, pair_index(mu, nu))) * jet.d3g[ab][triple_index(mu, nu, tau)];
    return acc;
}

template <class S, class F>
S total_derivative(F&& f, int tau, const JetDataT<S>& jet, int dep_order) {
    check_index(tau);
    if (dep_order < 0 || dep_order > 2)
        throw InsufficientJetOrder("total derivative needs dependence order in [0,2]; higher orders exceed stored jet data");
    if (jet.order < dep_order + 1)
        throw InsufficientJetOrder("jet carries too few derivative levels for this total derivative");

    auto seeded = seed_jet(jet, dep_order, /*seed_x=*/true);
    Dual<S> fd = f(seeded.jet);
    return chain_total(fd, seeded.layout, jet, tau, dep_order);
}

}  // namespace covgrav
