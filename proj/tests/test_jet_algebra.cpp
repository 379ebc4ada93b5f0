#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "covgrav/jet_data.hpp"
#include "covgrav/sym_index.hpp"
#include "covgrav/taylor_jet.hpp"

using namespace covgrav;

TEST_CASE("normalize_pair orders and assigns multiplicity") {
    auto p = normalize_pair(2, 1);
    CHECK(p.first == 1);
    CHECK(p.second == 2);
    CHECK(p.mult == 2);

    p = normalize_pair(3, 3);
    CHECK(p.first == 3);
    CHECK(p.second == 3);
    CHECK(p.mult == 1);

    p = normalize_pair(0, 2);
    CHECK(p.first == 0);
    CHECK(p.second == 2);
    CHECK(p.mult == 2);

    CHECK_THROWS_AS(normalize_pair(4, 0), std::out_of_range);
    CHECK_THROWS_AS(normalize_pair(0, -1), std::out_of_range);
}

TEST_CASE("normalize_pair is idempotent and permutation invariant") {
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            auto p = normalize_pair(a, b);
            auto q = normalize_pair(b, a);
            auto r = normalize_pair(p.first, p.second);
            CHECK(p.first == q.first);
            CHECK(p.second == q.second);
            CHECK(p.mult == q.mult);
            CHECK(r.first == p.first);
            CHECK(r.second == p.second);
            CHECK(pair_index(a, b) == pair_index(b, a));
        }
}

TEST_CASE("pair and triple tables are consistent") {
    for (int i = 0; i < kNumPairs; ++i) {
        CHECK(pair_index(kPairList[i][0], kPairList[i][1]) == i);
        CHECK(kPairMult[i] == pair_mult(kPairList[i][0], kPairList[i][1]));
    }
    for (int i = 0; i < kNumTriples; ++i) {
        const auto& t = kTripleList[i];
        CHECK(triple_index(t[0], t[1], t[2]) == i);
        CHECK(triple_index(t[2], t[0], t[1]) == i);
        CHECK(triple_index(t[1], t[2], t[0]) == i);
    }
}

TEST_CASE("exp(x0) reproduces the known series") {
    auto x0 = TaylorJet::variable(0, 0.0, 3);
    auto j = exp(x0);
    CHECK(j.partial({0, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.partial({1, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.coeff(1) == doctest::Approx(1.0));
    // coefficients along x0: 1, 1, 1/2, 1/6
    CHECK(j.partial({2, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(j.partial({3, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("x1*x2 at the origin is a single mixed coefficient") {
    auto x1 = TaylorJet::variable(1, 0.0, 3);
    auto x2 = TaylorJet::variable(2, 0.0, 3);
    auto j = x1 * x2;
    CHECK(j.partial({0, 1, 1, 0}) == doctest::Approx(1.0));
    CHECK(j.value() == 0.0);
    CHECK(j.partial({0, 1, 0, 0}) == 0.0);
    CHECK(j.partial({0, 2, 0, 0}) == 0.0);
}

TEST_CASE("sin^2 + cos^2 is the constant jet 1") {
    for (double v : {0.0, 0.7, -2.3}) {
        auto x0 = TaylorJet::variable(0, v, 3);
        auto j = sin(x0) * sin(x0) + cos(x0) * cos(x0);
        CHECK(j.value() == doctest::Approx(1.0).epsilon(1e-15));
        for (int k = 1; k < j.size(); ++k) CHECK(std::abs(j.coeff(k)) < 1e-15);
    }
}

TEST_CASE("jet multiplication is associative and division round-trips") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto rnd = [&](double bias) {
            auto j = TaylorJet::constant(bias + uni(rng), 3);
            for (int k = 1; k < j.size(); ++k) j.coeff(k) = uni(rng);
            return j;
        };
        auto a = rnd(0.0), b = rnd(2.0), c = rnd(0.0);
        auto lhs = (a * b) * c;
        auto rhs = a * (b * c);
        for (int k = 0; k < lhs.size(); ++k) CHECK(lhs.coeff(k) == doctest::Approx(rhs.coeff(k)).epsilon(1e-14));

        auto back = (a / b) * b;
        for (int k = 0; k < back.size(); ++k) CHECK(back.coeff(k) == doctest::Approx(a.coeff(k)).epsilon(1e-12));
    }
}

TEST_CASE("constant one is the multiplicative identity") {
    auto one = TaylorJet::constant(1.0, 3);
    auto x = TaylorJet::variable(2, 0.4, 3);
    auto j = log(exp(x)) * one;
    for (int k = 0; k < j.size(); ++k) CHECK(j.coeff(k) == doctest::Approx(x.coeff(k)).epsilon(1e-13));
}

TEST_CASE("jet derivative extraction matches analytic derivatives") {
    // f = exp(x0) * sin(x1); check d/dx0 and d/dx1 jets at (0.3, 0.9)
    auto x0 = TaylorJet::variable(0, 0.3, 4);
    auto x1 = TaylorJet::variable(1, 0.9, 4);
    auto f = exp(x0) * sin(x1);
    auto d0 = f.derivative(0);
    auto d1 = f.derivative(1);
    CHECK(d0.value() == doctest::Approx(std::exp(0.3) * std::sin(0.9)).epsilon(1e-14));
    CHECK(d1.value() == doctest::Approx(std::exp(0.3) * std::cos(0.9)).epsilon(1e-14));
    CHECK(d1.derivative(1).value() == doctest::Approx(-std::exp(0.3) * std::sin(0.9)).epsilon(1e-13));
}

TEST_CASE("total derivative of g00 along x1 returns the packed first derivative") {
    std::mt19937_64 rng(7);
    auto jet = random_jet(rng);
    auto f = [](const auto& j) { return j.g[pair_index(0, 0)]; };
    CHECK(total_derivative(f, 1, jet, 0) == doctest::Approx(jet.dg[pair_index(0, 0)][1]).epsilon(1e-15));
}

TEST_CASE("total derivative of a constant vanishes") {
    std::mt19937_64 rng(8);
    auto jet = random_jet(rng);
    auto f = [](const auto& j) { return one_like(j.g[0]) * 3.25; };
    for (int tau = 0; tau < 4; ++tau) CHECK(total_derivative(f, tau, jet, 0) == 0.0);
}

TEST_CASE("total derivative satisfies the product rule on g11*g22") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        auto jet = random_jet(rng);
        auto f = [](const auto& j) { return j.g[pair_index(1, 1)] * j.g[pair_index(2, 2)]; };
        const double got = total_derivative(f, 0, jet, 0);
        const double want = jet.dg[pair_index(1, 1)][0] * jet.g[pair_index(2, 2)] +
                            jet.g[pair_index(1, 1)] * jet.dg[pair_index(2, 2)][0];
        CHECK(got == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("Leibniz rule holds for mixed-order jet functions") {
    std::mt19937_64 rng(10);
    auto f = [](const auto& j) { return j.g[1] * j.dg[4][2] + j.g[7]; };
    auto h = [](const auto& j) { return j.dg[0][0] * j.dg[0][0] + j.g[9] * j.dg[3][1]; };
    auto fh = [&](const auto& j) { return f(j) * h(j); };
    for (int trial = 0; trial < 25; ++trial) {
        auto jet = random_jet(rng);
        for (int tau = 0; tau < 4; ++tau) {
            const double lhs = total_derivative(fh, tau, jet, 1);
            const double rhs =
                total_derivative(f, tau, jet, 1) * h(jet) + f(jet) * total_derivative(h, tau, jet, 1);
            const double scale = 1.0 + std::abs(lhs);
            CHECK(std::abs(lhs - rhs) / scale < 1e-12);
        }
    }
}

TEST_CASE("total derivatives commute on holonomic jet data") {
    std::mt19937_64 rng(11);
    auto f = [](const auto& j) { return j.g[2] * j.dg[5][1] + j.g[0] * j.g[8]; };
    for (int trial = 0; trial < 25; ++trial) {
        auto jet = random_jet(rng);
        for (int tau = 0; tau < 4; ++tau)
            for (int sg = tau + 1; sg < 4; ++sg) {
                auto dtau = [&](const auto& j) { return total_derivative(f, tau, j, 1); };
                auto dsg = [&](const auto& j) { return total_derivative(f, sg, j, 1); };
                const double lhs = total_derivative(dtau, sg, jet, 2);
                const double rhs = total_derivative(dsg, tau, jet, 2);
                const double scale = 1.0 + std::abs(lhs);
                CHECK(std::abs(lhs - rhs) / scale < 1e-12);
            }
    }
}

TEST_CASE("total derivative rejects insufficient jet order") {
    std::mt19937_64 rng(12);
    auto jet = random_jet(rng, 2);
    auto f = [](const auto& j) { return j.d2g[0][0]; };
    CHECK_THROWS_AS(total_derivative(f, 0, jet, 2), InsufficientJetOrder);
}

TEST_CASE("metric jet accessors symmetrize all index permutations") {
    std::mt19937_64 rng(13);
    auto jet = random_jet(rng);
    CHECK(jet.gat(1, 3) == jet.gat(3, 1));
    CHECK(jet.dgat(2, 0, 1) == jet.dgat(0, 2, 1));
    CHECK(jet.d2gat(1, 2, 3, 0) == jet.d2gat(2, 1, 0, 3));
    CHECK(jet.d3gat(0, 1, 2, 1, 0) == jet.d3gat(1, 0, 0, 1, 2));
}
