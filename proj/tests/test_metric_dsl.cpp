#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "covgrav/curvature.hpp"
#include "covgrav/metric_family.hpp"

using namespace covgrav;

namespace {
const std::string kCorpus = COVGRAV_CORPUS_DIR;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}
}  // namespace

TEST_CASE("parser handles grammar precedence") {
    auto e = parse_expression("-(1-2*M/r)");
    REQUIRE(e->kind == ExprKind::Neg);
    REQUIRE(e->a->kind == ExprKind::Sub);
    CHECK(e->a->a->kind == ExprKind::Literal);
    CHECK(e->a->b->kind == ExprKind::Div);
    CHECK(e->a->b->a->kind == ExprKind::Mul);

    e = parse_expression("r^2*sin(theta)^2");
    REQUIRE(e->kind == ExprKind::Mul);
    CHECK(e->a->kind == ExprKind::PowLiteral);
    CHECK(e->b->kind == ExprKind::PowLiteral);
    CHECK(e->b->a->kind == ExprKind::Call);
    CHECK(e->b->a->name == "sin");
}

TEST_CASE("parser reports malformed input with byte offsets") {
    try {
        parse_expression("2*+3");
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.offset == 2);
    }
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("sin(x"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_expression("x^y"), ParseError);  // operator exponent must be a literal
}

TEST_CASE("unary minus binds below the power operator") {
    EvalContext<double> ctx;
    ctx.coord_names = {"t", "x", "y", "z"};
    ctx.coords = {0.0, 3.0, 0.0, 0.0};
    auto e = parse_expression("-x^2");
    CHECK(eval_expression(*e, ctx) == doctest::Approx(-9.0));
}

TEST_CASE("print-parse round trip is a fixed point on the corpus") {
    for (const char* name :
         {"minkowski", "schwarzschild", "kasner", "flat_flrw", "de_sitter_like", "non_solution", "em_constant_field"}) {
        auto fam = load_metric_family(kCorpus + "/" + std::string(name) + ".json");
        for (int ab = 0; ab < kNumPairs; ++ab) {
            std::string once = print_expression(*fam.components[ab]);
            std::string twice = print_expression(*parse_expression(once));
            CHECK(once == twice);
        }
    }
}

TEST_CASE("minkowski prolongs to the constant section") {
    auto fam = load_metric_family(kCorpus + "/minkowski.json");
    auto jet = prolong_family(fam, {0.3, -1.2, 4.0, 0.9});
    CHECK(jet.g[pair_index(0, 0)] == -1.0);
    CHECK(jet.g[pair_index(1, 1)] == 1.0);
    CHECK(jet.g[pair_index(0, 1)] == 0.0);
    for (int ab = 0; ab < kNumPairs; ++ab) {
        for (int m = 0; m < 4; ++m) CHECK(jet.dg[ab][m] == 0.0);
        for (int mn = 0; mn < kNumPairs; ++mn) CHECK(jet.d2g[ab][mn] == 0.0);
        for (int t = 0; t < kNumTriples; ++t) CHECK(jet.d3g[ab][t] == 0.0);
    }
}

TEST_CASE("schwarzschild prolongation matches hand differentiation") {
    auto fam = load_metric_family(kCorpus + "/schwarzschild.json");
    const double r = 3.0, th = M_PI / 2;
    auto jet = prolong_family(fam, {0.0, r, th, 0.0});
    CHECK(jet.g[pair_index(0, 0)] == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(jet.g[pair_index(1, 1)] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(jet.g[pair_index(2, 2)] == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(jet.g[pair_index(3, 3)] == doctest::Approx(9.0).epsilon(1e-14));
    // d(r^2)/dr = 2r
    CHECK(jet.dg[pair_index(2, 2)][1] == doctest::Approx(6.0).epsilon(1e-14));
    // d(g00)/dr = -2M/r^2
    CHECK(jet.dg[pair_index(0, 0)][1] == doctest::Approx(-2.0 / 9.0).epsilon(1e-14));
    // d2(g33)/dtheta2 = r^2 * 2*cos(2 theta) = -2 r^2 at theta = pi/2
    CHECK(jet.d2g[pair_index(3, 3)][pair_index(2, 2)] == doctest::Approx(-18.0).epsilon(1e-12));
}

TEST_CASE("schwarzschild at the horizon fails") {
    auto fam = load_metric_family(kCorpus + "/schwarzschild.json");
    CHECK_THROWS(prolong_family(fam, {0.0, 2.0, M_PI / 2, 0.0}));
}

TEST_CASE("euclidean signature is rejected") {
    auto text = slurp(kCorpus + "/minkowski.json");
    auto pos = text.find("\"-1\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 4, "\"1\"");
    auto fam = parse_metric_family(text);
    CHECK_THROWS_AS(prolong_family(fam, {0.0, 0.0, 0.0, 0.0}), SignatureError);
}

TEST_CASE("missing and unordered components are rejected") {
    auto text = slurp(kCorpus + "/minkowski.json");
    auto no_g33 = text;
    auto pos = no_g33.find(",\n    \"g33\": \"1\"");
    REQUIRE(pos != std::string::npos);
    no_g33.erase(pos, std::string(",\n    \"g33\": \"1\"").size());
    CHECK_THROWS(parse_metric_family(no_g33));

    auto unordered = text;
    pos = unordered.find("\"g01\"");
    REQUIRE(pos != std::string::npos);
    unordered.replace(pos, 5, "\"g10\"");
    CHECK_THROWS(parse_metric_family(unordered));
}

TEST_CASE("unknown identifiers are rejected at load time") {
    auto text = slurp(kCorpus + "/schwarzschild.json");
    auto pos = text.find("2*M/r");
    REQUIRE(pos != std::string::npos);
    auto bad = text;
    bad.replace(pos, 5, "2*Q/r");
    CHECK_THROWS(parse_metric_family(bad));
}

TEST_CASE("prolongation derivatives agree with central finite differences") {
    for (const char* name : {"schwarzschild", "de_sitter_like", "flat_flrw"}) {
        auto fam = load_metric_family(kCorpus + "/" + std::string(name) + ".json");
        std::array<double, 4> p = {0.4, 3.1, 1.1, 0.6};
        if (std::string(name) != "schwarzschild") p = {1.3, 0.2, -0.4, 0.8};
        auto jet = prolong_family(fam, p);
        const double h = 1e-5;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) {
                auto pp = p, pm = p;
                pp[mu] += h;
                pm[mu] -= h;
                double fd = (evaluate_component(*fam.components[ab], fam.coord_names, fam.parameters, pp, 0).value() -
                             evaluate_component(*fam.components[ab], fam.coord_names, fam.parameters, pm, 0).value()) /
                            (2 * h);
                CHECK(std::abs(fd - jet.dg[ab][mu]) < 1e-6);
            }
    }
}

TEST_CASE("renaming coordinates consistently leaves numbers unchanged") {
    auto text = slurp(kCorpus + "/schwarzschild.json");
    auto renamed = text;
    for (auto [from, to] : std::initializer_list<std::pair<const char*, const char*>>{
             {"\"t\"", "\"u0\""}, {"\"r\"", "\"u1\""}, {"\"theta\"", "\"u2\""}, {"\"phi\"", "\"u3\""}}) {
        auto p = renamed.find(from);
        REQUIRE(p != std::string::npos);
        renamed.replace(p, std::string(from).size(), to);
    }
    // replace identifier uses inside expressions
    auto replace_all = [](std::string s, const std::string& from, const std::string& to) {
        size_t p = 0;
        while ((p = s.find(from, p)) != std::string::npos) {
            s.replace(p, from.size(), to);
            p += to.size();
        }
        return s;
    };
    renamed = replace_all(renamed, "/r\"", "/u1\"");
    renamed = replace_all(renamed, "2*M/r)", "2*M/u1)");
    renamed = replace_all(renamed, "r^2", "u1^2");
    renamed = replace_all(renamed, "sin(theta)", "sin(u2)");

    auto fam0 = parse_metric_family(text);
    auto fam1 = parse_metric_family(renamed);
    auto j0 = prolong_family(fam0, {0.0, 3.0, 1.1, 0.2});
    auto j1 = prolong_family(fam1, {0.0, 3.0, 1.1, 0.2});
    for (int ab = 0; ab < kNumPairs; ++ab) {
        CHECK(j0.g[ab] == j1.g[ab]);
        for (int mn = 0; mn < kNumPairs; ++mn) CHECK(j0.d2g[ab][mn] == j1.d2g[ab][mn]);
    }
}

TEST_CASE("em field block evaluates antisymmetrically") {
    auto fam = load_metric_family(kCorpus + "/em_constant_field.json");
    REQUIRE(fam.has_em_field());
    auto F = em_field_at(fam, {0.0, 0.0, 0.0, 0.0});
    CHECK(F[0][1] == doctest::Approx(0.5));
    CHECK(F[1][0] == doctest::Approx(-0.5));
    CHECK(F[1][2] == doctest::Approx(0.25));
    CHECK(F[2][1] == doctest::Approx(-0.25));
    CHECK(F[0][2] == 0.0);
    for (int a = 0; a < 4; ++a) CHECK(F[a][a] == 0.0);
}
