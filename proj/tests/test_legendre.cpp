#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "covgrav/legendre.hpp"
#include "covgrav/metric_family.hpp"

using namespace covgrav;

namespace {
const std::string kCorpus = COVGRAV_CORPUS_DIR;

MetricJet corpus_jet(const char* name, std::array<double, 4> p) {
    return prolong_family(load_metric_family(kCorpus + "/" + std::string(name) + ".json"), p);
}
}  // namespace

TEST_CASE("the momentum chart carries 140 coordinates") {
    CHECK(kMomentumCoordinateCount == 140);
    CHECK(kNumPairs * kDim + kNumPairs * kNumPairs == 140);
}

TEST_CASE("constant-metric jets map to vanishing p1 and p_ext") {
    std::mt19937_64 rng(300);
    auto jet = random_jet(rng);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        jet.dg[ab].fill(0.0);
        jet.d2g[ab].fill(0.0);
        jet.d3g[ab].fill(0.0);
    }
    auto m = legendre(jet);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu) CHECK(m.p1[ab][mu] == doctest::Approx(0.0));
    CHECK(m.p_ext == doctest::Approx(0.0));
    auto lmn = l_coeff_2(metric_algebra(jet.g));
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mn = 0; mn < kNumPairs; ++mn)
            CHECK(m.p2[ab][mn] == doctest::Approx(kPairMult[mn] * lmn[ab][mn]));
}

TEST_CASE("p2 equals the direct derivative of L in the packed coordinates") {
    std::mt19937_64 rng(301);
    for (int trial = 0; trial < 20; ++trial) {
        auto jet = random_jet(rng);
        auto m = legendre(jet);
        auto s = seed_jet(jet, 2);
        auto L = lagrangian_vacuum(s.jet);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mn = 0; mn < kNumPairs; ++mn) {
                const double ad = L.grad(s.layout.id2g(ab, mn));
                CHECK(std::abs(m.p2[ab][mn] - ad) / (1.0 + std::abs(ad)) < 1e-9);
            }
    }
}

TEST_CASE("extended momentum reproduces L - p.dg - p.d2g and -H") {
    std::mt19937_64 rng(302);
    for (int trial = 0; trial < 50; ++trial) {
        auto jet = random_jet(rng);
        auto m = legendre(jet);
        const double H = hamiltonian(jet);
        CHECK(std::abs(m.p_ext + H) / (1.0 + std::abs(H)) < 1e-9);
    }
}

TEST_CASE("numerical Legendre rank is 54") {
    auto mink = corpus_jet("minkowski", {0, 0, 0, 0});
    CHECK(legendre_rank(mink) == 54);

    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 10; ++trial) {
        auto jet = random_jet(rng);
        CHECK(legendre_rank(jet) == 54);
    }
}

TEST_CASE("rank 54 certifies degeneracy against the 194 momentum-chart outputs") {
    std::mt19937_64 rng(304);
    auto jet = random_jet(rng);
    const int outputs = kDim + kNumPairs + kNumPairs * kDim + kMomentumCoordinateCount;
    CHECK(outputs == 194);
    CHECK(legendre_rank(jet) < outputs);
}

TEST_CASE("momentum inversion round-trips the forward map") {
    std::mt19937_64 rng(305);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto jet = random_jet(rng, 1);
        auto lm1 = l_coeff_1(jet);
        auto vel = invert_momenta(jet.g, lm1);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) worst = std::max(worst, std::abs(vel[ab][mu] - jet.dg[ab][mu]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("momentum inversion is linear and sends zero to zero") {
    std::mt19937_64 rng(306);
    auto jet = random_jet(rng, 1);
    PairVec4<double> zero{};
    auto v0 = invert_momenta(jet.g, zero);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu) CHECK(v0[ab][mu] == 0.0);

    auto p = l_coeff_1(jet);
    auto v1 = invert_momenta(jet.g, p);
    for (auto& row : p)
        for (auto& v : row) v *= 2.0;
    auto v2 = invert_momenta(jet.g, p);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu) CHECK(v2[ab][mu] == doctest::Approx(2.0 * v1[ab][mu]).epsilon(1e-12));
}

TEST_CASE("FLRW momenta invert to the adot-dependent velocities") {
    MetricJet jet;
    jet.order = 3;
    jet.g[pair_index(0, 0)] = -1;
    for (int i = 1; i < 4; ++i) jet.g[pair_index(i, i)] = 1.0;
    for (int i = 1; i < 4; ++i) jet.dg[pair_index(i, i)][0] = 2.0;
    auto vel = invert_momenta(jet.g, l_coeff_1(jet));
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < 4; ++mu) CHECK(vel[ab][mu] == doctest::Approx(jet.dg[ab][mu]).epsilon(1e-11));
}

TEST_CASE("unified residual blocks vanish on a vacuum solution jet") {
    auto jet = corpus_jet("schwarzschild", {0, 3.4, 1.1, 0.2});
    auto res = unified_residuals(jet, legendre(jet));
    CHECK(res.max_einstein() < 1e-8);
    CHECK(res.max_momentum() == 0.0);  // momenta from the map itself
    CHECK(res.holonomy_first == 0.0);
    CHECK(res.holonomy_second == 0.0);
}

TEST_CASE("a p2 perturbation registers linearly in its block") {
    auto jet = corpus_jet("minkowski", {0, 0, 0, 0});
    auto mom = legendre(jet);
    const double eps = 3e-4;
    mom.p2[pair_index(1, 2)][pair_index(0, 3)] += eps;
    auto res = unified_residuals(jet, mom);
    CHECK(res.momentum_p2[pair_index(1, 2)][pair_index(0, 3)] == doctest::Approx(eps));
    CHECK(res.max_momentum() == doctest::Approx(eps));
}

TEST_CASE("a non-solution jet trips only the Einstein block") {
    auto jet = corpus_jet("non_solution", {0.1, 0.8, 0.0, 0.0});
    auto res = unified_residuals(jet, legendre(jet));
    CHECK(res.max_einstein() > 1e-3);
    CHECK(res.max_momentum() == 0.0);
}
