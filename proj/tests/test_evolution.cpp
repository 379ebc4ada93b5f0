#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covgrav/evolution.hpp"

using namespace covgrav;

namespace {
const std::array<double, 3> kVacuumP = {2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0};
}

TEST_CASE("degenerate exponents give the flat state") {
    auto s = kasner({1.0, 0.0, 0.0}, 1.0);
    CHECK(s.g[pair_index(0, 0)] == -1.0);
    CHECK(s.g[pair_index(1, 1)] == 1.0);
    CHECK(s.g[pair_index(2, 2)] == 1.0);
    CHECK(s.g[pair_index(3, 3)] == 1.0);
    CHECK(s.v[pair_index(1, 1)] == 2.0);
    CHECK(s.v[pair_index(2, 2)] == 0.0);
    CHECK(s.v[pair_index(3, 3)] == 0.0);
    CHECK_THROWS(kasner(kVacuumP, 0.0));
}

TEST_CASE("vacuum exponents satisfy the Einstein constraints, others do not") {
    // full 3-jet of the closed-form family at t = 1.3
    auto jet3 = [](const std::array<double, 3>& p, double t) {
        MetricJet jet;
        jet.order = 3;
        jet.x = {t, 0, 0, 0};
        jet.g[pair_index(0, 0)] = -1.0;
        for (int i = 0; i < 3; ++i) {
            const double e = 2.0 * p[i];
            jet.g[pair_index(i + 1, i + 1)] = std::pow(t, e);
            jet.dg[pair_index(i + 1, i + 1)][0] = e * std::pow(t, e - 1);
            jet.d2g[pair_index(i + 1, i + 1)][pair_index(0, 0)] = e * (e - 1) * std::pow(t, e - 2);
            jet.d3g[pair_index(i + 1, i + 1)][triple_index(0, 0, 0)] =
                e * (e - 1) * (e - 2) * std::pow(t, e - 3);
        }
        return jet;
    };
    auto el = euler_lagrange(jet3(kVacuumP, 1.3));
    for (double v : el) CHECK(std::abs(v) < 1e-9);

    auto el_bad = euler_lagrange(jet3({0.5, 0.5, 0.5}, 1.3));
    double m = 0;
    for (double v : el_bad) m = std::max(m, std::abs(v));
    CHECK(m > 1e-2);
}

TEST_CASE("constant flat state closes with zero homogeneous part") {
    EvolState s;
    s.g[pair_index(0, 0)] = -1;
    for (int i = 1; i < 4; ++i) s.g[pair_index(i, i)] = 1;
    auto cl = closure_fh(s);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        CHECK(cl.accel[ab] == doctest::Approx(0.0));
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) CHECK(cl.Fh[ab][m][n] == doctest::Approx(0.0));
    }
}

TEST_CASE("closure reproduces the closed-form power-law acceleration") {
    auto s = kasner(kVacuumP, 1.0);
    auto cl = closure_fh(s);
    for (int i = 0; i < 3; ++i) {
        const double e = 2.0 * kVacuumP[i];
        CHECK(cl.accel[pair_index(i + 1, i + 1)] == doctest::Approx(e * (e - 1)).epsilon(1e-9));
    }
    CHECK(std::abs(cl.accel[pair_index(0, 0)]) < 1e-10);
}

TEST_CASE("closure output satisfies the trace condition with the spatial blocks") {
    for (double t : {1.0, 1.5, 2.0}) {
        auto s = kasner(kVacuumP, t);
        auto cl = closure_fh(s);
        auto res = homogeneous_residual(cl.Fh, s.g);
        for (double v : res) CHECK(std::abs(v) < 1e-8);
    }
}

TEST_CASE("flat initial data stays put") {
    EvolState s;
    s.g[pair_index(0, 0)] = -1;
    for (int i = 1; i < 4; ++i) s.g[pair_index(i, i)] = 1;
    auto traj = integrate(s, 1.0, 1e-2);
    REQUIRE(traj.completed);
    const auto& last = traj.points.back();
    for (int ab = 0; ab < kNumPairs; ++ab) {
        CHECK(last.g[ab] == doctest::Approx(s.g[ab]));
        CHECK(last.v[ab] == doctest::Approx(0.0));
    }
    CHECK(traj.max_ricci < 1e-12);
}

TEST_CASE("the vacuum power-law trajectory reproduces the closed form") {
    auto traj = integrate(kasner(kVacuumP, 1.0), 2.0, 1e-3);
    REQUIRE(traj.completed);
    auto expect = kasner(kVacuumP, 2.0);
    const auto& last = traj.points.back();
    CHECK(last.t == doctest::Approx(2.0));
    for (int ab = 0; ab < kNumPairs; ++ab) {
        CHECK(std::abs(last.g[ab] - expect.g[ab]) < 1e-5);
        CHECK(std::abs(last.v[ab] - expect.v[ab]) < 1e-5);
    }
    CHECK(traj.max_ricci < 1e-6);
}

TEST_CASE("RK4 halving improves the endpoint error by roughly 16x") {
    auto endpoint_error = [](double h) {
        auto traj = integrate(kasner(kVacuumP, 1.0), 1.5, h);
        REQUIRE(traj.completed);
        auto expect = kasner(kVacuumP, 1.5);
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            m = std::max(m, std::abs(traj.points.back().g[ab] - expect.g[ab]));
        return m;
    };
    const double e1 = endpoint_error(2e-2);
    const double e2 = endpoint_error(1e-2);
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("trajectories are deterministic") {
    auto t1 = integrate(kasner(kVacuumP, 1.0), 1.2, 1e-3);
    auto t2 = integrate(kasner(kVacuumP, 1.0), 1.2, 1e-3);
    REQUIRE(t1.points.size() == t2.points.size());
    for (size_t i = 0; i < t1.points.size(); ++i)
        for (int ab = 0; ab < kNumPairs; ++ab) {
            CHECK(t1.points[i].g[ab] == t2.points[i].g[ab]);
            CHECK(t1.points[i].v[ab] == t2.points[i].v[ab]);
        }
}

TEST_CASE("generic constraint-satisfying initial data evolves Ricci-flat") {
    // Diagonal data away from any power-law family. Diagonal (g, v)
    // satisfies the momentum constraints; the remaining scalar constraint
    // H1 H2 + H1 H3 + H2 H3 = 0 fixes one expansion rate.
    EvolState s;
    s.t = 1.0;
    s.g[pair_index(0, 0)] = -1.0;
    const double a[3] = {1.3, 0.8, 1.1};
    const double H1 = 0.4, H2 = 0.1, H3 = -H1 * H2 / (H1 + H2);
    const double H[3] = {H1, H2, H3};
    for (int i = 0; i < 3; ++i) {
        s.g[pair_index(i + 1, i + 1)] = a[i];
        s.v[pair_index(i + 1, i + 1)] = 2.0 * H[i] * a[i];
    }
    auto traj = integrate(s, 1.4, 1e-3);
    REQUIRE(traj.completed);
    CHECK(traj.max_ricci < 1e-6);
}

TEST_CASE("constraint-violating data is rejected with a diagnostic") {
    auto s = kasner(kVacuumP, 1.0);
    s.v[pair_index(1, 1)] *= 1.5;  // breaks the scalar constraint
    auto traj = integrate(s, 1.4, 1e-3);
    CHECK_FALSE(traj.completed);
    CHECK_FALSE(traj.halt_reason.empty());
}

TEST_CASE("trajectory CSV carries the documented columns") {
    auto traj = integrate(kasner(kVacuumP, 1.0), 1.05, 1e-2);
    const std::string path = "evolution_test_traj.csv";
    write_trajectory_csv(traj, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "t,g00,g01,g02,g03,g11,g12,g13,g22,g23,g33,v00,v01,v02,v03,v11,v12,v13,v22,v23,v33,ricci_norm");
    size_t rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == traj.points.size());
    std::remove(path.c_str());
}
