#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "covgrav/matter_em.hpp"
#include "covgrav/metric_family.hpp"
#include "covgrav/multivector.hpp"

using namespace covgrav;

namespace {
const std::string kCorpus = COVGRAV_CORPUS_DIR;

std::array<double, kNumPairs> minkowski_g() {
    std::array<double, kNumPairs> g{};
    g[pair_index(0, 0)] = -1;
    for (int i = 1; i < 4; ++i) g[pair_index(i, i)] = 1;
    return g;
}

EMField random_em(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    EMField em;
    for (int m = 0; m < 4; ++m)
        for (int n = m + 1; n < 4; ++n) em.set(m, n, uni(rng));
    return em;
}
}  // namespace

TEST_CASE("EM Lagrangian signs at the flat metric") {
    auto g = minkowski_g();
    EMField em;
    em.set(0, 1, 0.8);  // electric-type component
    CHECK(em_lagrangian(g, em) == doctest::Approx(-2.0 * 0.8 * 0.8));

    EMField em2;
    em2.set(1, 2, 0.6);  // magnetic-type component
    CHECK(em_lagrangian(g, em2) == doctest::Approx(2.0 * 0.6 * 0.6));

    EMField zero;
    CHECK(em_lagrangian(g, zero) == doctest::Approx(0.0));
}

TEST_CASE("antisymmetry is preserved and enforced") {
    EMField em;
    em.set(0, 2, 1.5);
    CHECK(em.F[0][2] == 1.5);
    CHECK(em.F[2][0] == -1.5);
    for (int a = 0; a < 4; ++a) CHECK(em.F[a][a] == 0.0);
}

TEST_CASE("zero field gives zero source and zero stress") {
    auto g = minkowski_g();
    EMField zero;
    auto Lm = em_source(g, zero);
    for (double v : Lm) CHECK(v == 0.0);
    auto T = stress_energy(g, zero);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) CHECK(T[m][n] == 0.0);
}

TEST_CASE("both stress-energy routes agree on random metrics and fields") {
    std::mt19937_64 rng(600);
    for (int trial = 0; trial < 200; ++trial) {
        auto jet = random_jet(rng, 0);
        auto em = random_em(rng);
        auto T1 = stress_energy(jet.g, em);
        auto T2 = stress_energy_closed(jet.g, em);
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                const double scale = 1.0 + std::abs(T2[m][n]);
                CHECK(std::abs(T1[m][n] - T2[m][n]) / scale < 1e-9);
            }
    }
}

TEST_CASE("the electromagnetic stress tensor is symmetric and trace-free") {
    std::mt19937_64 rng(601);
    for (int trial = 0; trial < 200; ++trial) {
        auto jet = random_jet(rng, 0);
        auto em = random_em(rng);
        auto T = stress_energy(jet.g, em);
        auto gi = invert_metric(jet.g);
        double tr = 0, scale = 0;
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) {
                tr += gi[m][n] * T[m][n];
                scale = std::max(scale, std::abs(T[m][n]));
                CHECK(std::abs(T[m][n] - T[n][m]) < 1e-14 * (1.0 + scale));
            }
        CHECK(std::abs(tr) < 1e-10 * (1.0 + scale));
    }
}

TEST_CASE("closed-form T00 at the flat metric with a single electric component") {
    auto g = minkowski_g();
    EMField em;
    em.set(0, 1, 1.0);
    auto T = stress_energy(g, em);
    // (c^4/4 pi G)(1/4 g00 F^2 - g^{ab} F_{0a} F_{0b}) with F^2 = -2, g^{11} F01 F01 = 1
    const double expect = (1.0 / (4.0 * M_PI)) * (0.25 * (-1.0) * (-2.0) - 1.0);
    CHECK(T[0][0] == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("sourced Einstein residual matches the Euler-Lagrange combination") {
    // On a non-solution family with an EM source the sourced constraint
    // EL^{ab} + Lm^{ab} must equal -rho n(ab) (G^{ab} - 8 pi G/c^4 T^{ab}).
    auto fam = load_metric_family(kCorpus + "/non_solution.json");
    auto jet = prolong_family(fam, {0.2, 0.6, -0.1, 0.3});
    std::mt19937_64 rng(602);
    auto em = random_em(rng);
    auto Lm = em_source(jet.g, em);
    auto el = euler_lagrange(jet);
    auto pack = curvature_pack(jet);
    auto T = stress_energy(jet.g, em);
    auto gi = pack.ginv;
    bool nonzero = false;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        const int a = kPairList[ab][0], b = kPairList[ab][1];
        double Tup = 0;
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) Tup += gi[a][m] * gi[b][n] * T[m][n];
        const double combo = -pack.rho * kPairMult[ab] * (pack.einstein_upper[a][b] - 8.0 * M_PI * Tup);
        const double sourced = el[ab] + Lm[ab];
        CHECK(std::abs(sourced - combo) / (1.0 + std::abs(combo)) < 1e-8);
        nonzero = nonzero || std::abs(sourced) > 1e-3;
    }
    CHECK(nonzero);
}

TEST_CASE("sourced constraints reduce to the vacuum set when the field vanishes") {
    auto fam = load_metric_family(kCorpus + "/schwarzschild.json");
    auto jet = prolong_family(fam, {0.0, 3.3, 1.0, 0.1});
    EMField zero;
    auto Lm = em_source(jet.g, zero);
    auto el = euler_lagrange(jet);
    for (int ab = 0; ab < kNumPairs; ++ab) CHECK(std::abs(el[ab] + Lm[ab]) < 1e-9);
}

TEST_CASE("degree probe: the vacuum Lagrangian has degree 2") {
    auto f = [](const auto& j) { return lagrangian_vacuum(j); };
    CHECK(degree_probe(f) == 2);
}

TEST_CASE("degree probe: the electromagnetic source measures 0 (metric-only dependence)") {
    std::mt19937_64 rng(603);
    auto em = random_em(rng);
    auto f = [&em](const auto& j) { return em_lagrangian(j.g, em); };
    const int deg = degree_probe(f);
    CHECK(deg == 0);
    CHECK(deg <= 1);
}

TEST_CASE("degree probe: explicit second-derivative dependence reports 4") {
    auto f = [](const auto& j) {
        auto v = j.d2g[pair_index(0, 0)][pair_index(0, 0)];
        return v * v;
    };
    CHECK(degree_probe(f) == 4);
}
