#include "covgrav/verify_suite.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <thread>

#include "covgrav/evolution.hpp"
#include "covgrav/first_order.hpp"
#include "covgrav/legendre.hpp"
#include "covgrav/matter_em.hpp"
#include "covgrav/metric_family.hpp"
#include "covgrav/multivector.hpp"
#include "covgrav/noether.hpp"

namespace covgrav {

double parallel_max(long n, const std::function<double(long)>& fn) {
    if (n <= 0) return 0.0;
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<unsigned>(workers, 8);
    if (n < 16 || workers == 1) {
        double m = 0;
        for (long i = 0; i < n; ++i) m = std::max(m, fn(i));
        return m;
    }
    std::vector<double> worst(workers, 0.0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            double m = 0;
            for (long i = w; i < n; i += workers) m = std::max(m, fn(i));
            worst[w] = m;
        });
    for (auto& t : pool) t.join();
    double m = 0;
    for (double v : worst) m = std::max(m, v);
    return m;
}

namespace {

double rel(double err, double scale) { return std::abs(err) / (1.0 + std::abs(scale)); }

struct SuiteBuilder {
    const VerifyOptions& opts;
    Report& report;

    void add(const std::string& name, const std::string& tag, double tol, long samples,
             const std::function<double(long)>& fn, bool informational = false) {
        CheckEntry e;
        e.name = name;
        e.paper_ref = tag;
        e.samples = samples;
        e.tolerance = opts.tolerance_override > 0.0 && !informational ? opts.tolerance_override : tol;
        const auto t0 = std::chrono::steady_clock::now();
        e.max_residual = parallel_max(samples, fn);
        if (std::getenv("COVGRAV_TIME_CHECKS")) {
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            std::fprintf(stderr, "%-36s %8.1f ms\n", name.c_str(), ms);
        }
        e.pass = e.max_residual < e.tolerance;
        e.informational = informational;
        report.checks.push_back(e);
    }
};

MetricJet jet_for(const VerifyOptions& o, std::uint64_t stream, long i, int order = 3) {
    auto rng = seeded_rng(o.seed, stream * 1000003ULL + static_cast<std::uint64_t>(i));
    return random_jet(rng, order);
}

}  // namespace

Report run_verify(const VerifyOptions& opts) {
    if (opts.samples <= 0) throw std::invalid_argument("samples must be positive");
    Report report;
    report.suite = "identity-suite";
    report.seed = opts.seed;
    report.samples = opts.samples;
    report.tolerance = opts.tolerance_override;
    report.version = kVersion;
    report.c0_factor = particular_solution_factor();
    report.timestamp = current_timestamp();

    SuiteBuilder b{opts, report};
    const long N = opts.samples;

    // --- jet arithmetic ------------------------------------------------
    b.add("taylor-associativity", "truncated-product", 1e-14, N, [&](long i) {
        auto rng = seeded_rng(opts.seed, 11000 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        auto rnd = [&](double bias) {
            auto j = TaylorJet::constant(bias + uni(rng), 3);
            for (int k = 1; k < j.size(); ++k) j.coeff(k) = uni(rng);
            return j;
        };
        auto a = rnd(0.0), c = rnd(0.0), d = rnd(2.0);
        auto lhs = (a * c) * d, rhs = a * (c * d);
        double m = 0;
        for (int k = 0; k < lhs.size(); ++k) m = std::max(m, std::abs(lhs.coeff(k) - rhs.coeff(k)));
        return m;
    });
    b.add("taylor-division-roundtrip", "truncated-reciprocal", 1e-12, N, [&](long i) {
        auto rng = seeded_rng(opts.seed, 12000 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        auto a = TaylorJet::constant(uni(rng), 3);
        auto c = TaylorJet::constant(2.0 + uni(rng), 3);
        for (int k = 1; k < a.size(); ++k) {
            a.coeff(k) = uni(rng);
            c.coeff(k) = uni(rng);
        }
        auto back = (a / c) * c;
        double m = 0;
        for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(back.coeff(k) - a.coeff(k)));
        return m;
    });
    b.add("leibniz-rule", "total-derivative-chain", 1e-12, N, [&](long i) {
        auto jet = jet_for(opts, 13, i);
        auto f = [](const auto& j) { return j.g[1] * j.dg[4][2] + j.g[7]; };
        auto h = [](const auto& j) { return j.dg[0][0] * j.dg[0][0] + j.g[9] * j.dg[3][1]; };
        auto fh = [&](const auto& j) { return f(j) * h(j); };
        double m = 0;
        for (int tau = 0; tau < 4; ++tau) {
            const double lhs = total_derivative(fh, tau, jet, 1);
            const double rhs = total_derivative(f, tau, jet, 1) * h(jet) + f(jet) * total_derivative(h, tau, jet, 1);
            m = std::max(m, rel(lhs - rhs, lhs));
        }
        return m;
    });
    b.add("total-derivatives-commute", "holonomic-symmetry", 1e-12, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 14, i);
        auto f = [](const auto& j) { return j.g[2] * j.dg[5][1] + j.g[0] * j.g[8]; };
        double m = 0;
        for (int tau = 0; tau < 4; ++tau)
            for (int sg = tau + 1; sg < 4; ++sg) {
                auto dt = [&](const auto& j) { return total_derivative(f, tau, j, 1); };
                auto ds = [&](const auto& j) { return total_derivative(f, sg, j, 1); };
                const double lhs = total_derivative(dt, sg, jet, 2);
                const double rhs = total_derivative(ds, tau, jet, 2);
                m = std::max(m, rel(lhs - rhs, lhs));
            }
        return m;
    });

    // --- curvature ------------------------------------------------------
    b.add("metric-compatibility", "levi-civita", 1e-12, N, [&](long i) {
        auto jet = jet_for(opts, 15, i);
        auto gam = christoffel(jet);
        double m = 0;
        for (int mu = 0; mu < 4; ++mu)
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c) {
                    double covar = jet.dgat(a, c, mu);
                    for (int l = 0; l < 4; ++l)
                        covar -= jet.gat(l, c) * gam[l][mu][a] + jet.gat(a, l) * gam[l][mu][c];
                    m = std::max(m, std::abs(covar));
                }
        return m;
    });

    const std::array<const char*, 4> fam_names = {"schwarzschild", "de_sitter_like", "flat_flrw", "non_solution"};
    std::vector<MetricFamily> fams;
    for (auto* n : fam_names) fams.push_back(load_metric_family(opts.corpus_dir + "/" + n + ".json"));
    auto fam_point = [&](size_t famidx, long i) {
        auto rng = seeded_rng(opts.seed, 16000 + famidx * 101 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-0.5, 0.5);
        std::array<double, 4> p{0.8 + uni(rng), 3.2 + uni(rng), 1.2 + 0.3 * uni(rng), 0.5 + uni(rng)};
        if (famidx != 0) p = {1.4 + 0.3 * uni(rng), uni(rng), uni(rng), uni(rng)};
        return p;
    };
    b.add("bianchi-contracted", "divergence-free-einstein", 1e-8, std::min<long>(N, 24), [&](long i) {
        const size_t famidx = static_cast<size_t>(i) % fams.size();
        auto jet = prolong_family(fams[famidx], fam_point(famidx, i), opts.order);
        auto pack = curvature_pack(jet);
        double m = 0;
        for (int nu = 0; nu < 4; ++nu) {
            double div = 0;
            for (int mu = 0; mu < 4; ++mu) {
                auto comp = [mu, nu](const auto& j) { return curvature_pack(j).einstein_upper[mu][nu]; };
                div += total_derivative(comp, mu, jet, 2);
                for (int l = 0; l < 4; ++l)
                    div += pack.gamma[mu][mu][l] * pack.einstein_upper[l][nu] +
                           pack.gamma[nu][mu][l] * pack.einstein_upper[mu][l];
            }
            m = std::max(m, std::abs(div));
        }
        return m;
    });
    b.add("ricci-partial-derivative-oracle", "curvature-two-routes", 1e-10, std::min<long>(N, 24), [&](long i) {
        const size_t famidx = static_cast<size_t>(i) % fams.size();
        auto p = fam_point(famidx, i);
        auto jets = prolong_family_jets(fams[famidx], p, 1);
        auto alg = metric_algebra(jets);
        auto gam = christoffel(jets, alg);
        auto ric = ricci(prolong_family(fams[famidx], p, opts.order));
        double m = 0;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                double val = 0;
                for (int ga = 0; ga < 4; ++ga) {
                    val += gam[ga][a][c].derivative(ga).value() - gam[ga][ga][c].derivative(a).value();
                    for (int de = 0; de < 4; ++de)
                        val += gam[ga][a][c].value() * gam[de][de][ga].value() -
                               gam[ga][de][c].value() * gam[de][a][ga].value();
                }
                m = std::max(m, std::abs(val - ric[a][c]));
            }
        return m;
    });

    // --- decomposition and Hamiltonian ----------------------------------
    b.add("decomposition-identity", "L-equals-Lmn-g2-plus-L0", 1e-9, N, [&](long i) {
        auto jet = jet_for(opts, 17, i, 2);
        auto alg = metric_algebra(jet.g);
        const double L = lagrangian_vacuum(jet, alg);
        auto lmn = l_coeff_2(alg);
        double acc = l_zero(jet, alg), biggest = std::abs(acc);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mn = 0; mn < kNumPairs; ++mn) {
                const double term = kPairMult[mn] * lmn[ab][mn] * jet.d2g[ab][mn];
                acc += term;
                biggest = std::max(biggest, std::abs(term));
            }
        return std::abs(L - acc) / (1.0 + biggest);
    });
    b.add("l0-degree-2-homogeneity", "euler-identity", 1e-10, N, [&](long i) {
        auto jet = jet_for(opts, 18, i, 1);
        auto d = dl0_ddg(jet);
        double euler = 0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) euler += d[ab][mu] * jet.dg[ab][mu];
        return rel(euler - 2.0 * l_zero(jet), l_zero(jet));
    });
    b.add("el-two-routes", "euler-lagrange-closed-vs-defining", 1e-9, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 19, i);
        auto closed = euler_lagrange(jet);
        auto defining = euler_lagrange_defining(jet);
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) m = std::max(m, rel(closed[ab] - defining[ab], closed[ab]));
        return m;
    });
    b.add("hamiltonian-two-forms", "kernel-vs-legendre-combination", 1e-9, N, [&](long i) {
        auto jet = jet_for(opts, 20, i);
        const double hk = hamiltonian(jet);
        return rel(hk - hamiltonian_legendre(jet), hk);
    });
    b.add("hamiltonian-ignores-d2g", "velocity-chart", 0.5, N, [&](long i) {
        auto jet = jet_for(opts, 21, i);
        const double h0 = hamiltonian(jet);
        auto rng = seeded_rng(opts.seed, 21500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mn = 0; mn < kNumPairs; ++mn) jet.d2g[ab][mn] = uni(rng);
        return hamiltonian(jet) == h0 ? 0.0 : 1.0;  // bit-identical or fail
    });

    // --- first order -----------------------------------------------------
    b.add("lbar-equals-hamiltonian", "first-order-equivalence", 1e-9, N, [&](long i) {
        auto jet = jet_for(opts, 22, i, 1);
        const double h = hamiltonian(jet);
        return rel(lbar(jet) - h, h);
    });
    b.add("pbar-two-routes", "first-order-momenta", 1e-9, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 23, i, 1);
        auto closed = first_order_momenta(jet);
        auto ad = first_order_momenta_ad(jet);
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) m = std::max(m, rel(closed[ab][mu] - ad[ab][mu], ad[ab][mu]));
        return m;
    });
    b.add("pbar-regularity-rank-40", "first-order-regular", 0.5, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 24, i, 1);
        return std::abs(first_order_regularity_rank(jet) - 40.0);
    });

    // --- Legendre ----------------------------------------------------------
    b.add("momentum-count-140", "momentum-chart", 0.5, 1,
          [&](long) { return std::abs(kMomentumCoordinateCount - 140.0); });
    b.add("legendre-rank-54", "tangent-legendre-rank", 0.5, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 25, i);
        return std::abs(legendre_rank(jet) - 54.0);
    });
    b.add("momentum-inversion-roundtrip", "velocity-momentum-bijection", 1e-9, N, [&](long i) {
        auto jet = jet_for(opts, 26, i, 1);
        auto vel = invert_momenta(jet.g, l_coeff_1(jet));
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) m = std::max(m, std::abs(vel[ab][mu] - jet.dg[ab][mu]));
        return m;
    });

    // --- solver blocks -----------------------------------------------------
    b.add("u-pair-swap", "u-tensor-symmetry", 1e-12, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 27, i, 0);
        auto alg = metric_algebra(jet.g);
        double m = 0;
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c)
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        for (int l = 0; l < 4; ++l)
                            for (int s = 0; s < 4; ++s)
                                m = std::max(m, std::abs(u_entry_sym(alg, a, c, mu, nu, l, s) -
                                                         u_entry_sym(alg, l, s, mu, nu, a, c)));
        return m;
    });
    b.add("u-antisym-representative", "u-tensor-antisymmetry", 1e-12, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 28, i, 0);
        return u_antisym_relation_residual(jet.g);
    });
    b.add("uv-contraction-3id", "pseudo-inverse-contraction", 1e-10, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 29, i, 0);
        auto U = u_tensor(jet.g);
        auto V = v_tensor(jet.g);
        double m = 0;
        for (int a = 0; a < 4; ++a)
            for (int c = a; c < 4; ++c)
                for (int e = 0; e < 4; ++e)
                    for (int ls = 0; ls < kNumPairs; ++ls)
                        for (int nu = 0; nu < 4; ++nu) {
                            double w = 0;
                            for (int ab = 0; ab < kNumPairs; ++ab)
                                for (int mu = 0; mu < 4; ++mu) w += V.v[ab][mu][a][c][e] * U.u[ab][mu][nu][ls];
                            // identity on packed arguments: (V U) = 3 x identity
                            const double want = (ls == pair_index(a, c) && nu == e) ? 3.0 : 0.0;
                            m = std::max(m, std::abs(w - want));
                        }
        return m;
    });
    b.add("fp-field-equation-residual", "particular-solution", 1e-8, std::min<long>(N, 500), [&](long i) {
        auto jet = jet_for(opts, 30, i, 1);
        auto F = f_particular(jet);
        auto r = hdw_residual(jet, F);
        double m = 0;
        for (double v : r) m = std::max(m, std::abs(v));
        return m;
    });
    b.add("fh-residual-invariance", "homogeneous-freedom", 1e-8, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 31, i, 1);
        auto rng = seeded_rng(opts.seed, 31500 + static_cast<std::uint64_t>(i));
        auto FP = f_particular(jet);
        auto Fh = random_homogeneous_solution(jet.g, rng);
        auto r0 = hdw_residual(jet, FP);
        auto r1 = hdw_residual(jet, accel_add(FP, Fh));
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) m = std::max(m, std::abs(r1[ab] - r0[ab]));
        return m;
    });
    b.add("homogeneous-lemma-forward", "trace-condition-sufficiency", 1e-8, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 32, i, 0);
        auto rng = seeded_rng(opts.seed, 32500 + static_cast<std::uint64_t>(i));
        auto Fh = random_homogeneous_solution(jet.g, rng);
        auto FU = u_contract(Fh, u_tensor(jet.g));
        double m = 0;
        for (double v : FU) m = std::max(m, std::abs(v));
        return m;
    });
    b.add("homogeneous-lemma-converse(ratio)", "trace-condition-necessity", 1.0, std::min<long>(N, 100),
          [&](long i) {
              auto jet = jet_for(opts, 33, i, 0);
              auto rng = seeded_rng(opts.seed, 33500 + static_cast<std::uint64_t>(i));
              std::uniform_real_distribution<double> uni(-1.0, 1.0);
              AccelField bad{};
              double scale = 0;
              for (int ab = 0; ab < kNumPairs; ++ab)
                  for (int m2 = 0; m2 < 4; ++m2)
                      for (int n2 = m2; n2 < 4; ++n2) {
                          bad[ab][m2][n2] = uni(rng);
                          bad[ab][n2][m2] = bad[ab][m2][n2];
                          scale = std::max(scale, std::abs(bad[ab][m2][n2]));
                      }
              auto BU = u_contract(bad, u_tensor(jet.g));
              double m = 0;
              for (double v : BU) m = std::max(m, std::abs(v));
              return (1e-3 * scale) / m;  // < 1 iff the violation is visible
          });
    b.add("section-extraction-vacuum", "solution-iff-trace-condition", 1e-8, 6, [&](long i) {
        const char* name = i < 3 ? "schwarzschild" : "kasner";
        auto fam = load_metric_family(opts.corpus_dir + "/" + name + ".json");
        std::array<double, 4> p = i < 3 ? std::array<double, 4>{0.0, 2.8 + 0.9 * i, 1.1, 0.4}
                                        : std::array<double, 4>{1.0 + 0.3 * (i - 3), 0.0, 0.0, 0.0};
        auto jet = prolong_family(fam, p, opts.order);
        auto Fh = accel_sub(accel_from_d2g(jet), f_particular(jet));
        auto r = homogeneous_residual(Fh, jet.g);
        double m = 0;
        for (double v : r) m = std::max(m, std::abs(v));
        return m;
    });
    b.add("section-extraction-negative(ratio)", "non-solution-detection", 1.0, 2, [&](long i) {
        auto fam = load_metric_family(opts.corpus_dir + "/non_solution.json");
        auto jet = prolong_family(fam, {0.1, 0.9 + 0.4 * i, 0.3, 0.0}, opts.order);
        auto Fh = accel_sub(accel_from_d2g(jet), f_particular(jet));
        double scale = 0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int m2 = 0; m2 < 4; ++m2)
                for (int n2 = 0; n2 < 4; ++n2) scale = std::max(scale, std::abs(Fh[ab][m2][n2]));
        auto r = homogeneous_residual(Fh, jet.g);
        double m = 0;
        for (double v : r) m = std::max(m, std::abs(v));
        return (1e-3 * scale) / m;
    });
    b.add("fm-contraction", "matter-source-inversion", 1e-9, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 34, i, 0);
        auto rng = seeded_rng(opts.seed, 34500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::array<double, kNumPairs> Lm;
        for (auto& v : Lm) v = uni(rng);
        auto FU = u_contract(f_matter(jet.g, Lm), u_tensor(jet.g));
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) m = std::max(m, std::abs(FU[ab] - Lm[ab]));
        return m;
    });
    b.add("sourced-residual-closure", "matter-field-equation", 1e-8, std::min<long>(N, 50), [&](long i) {
        auto jet = jet_for(opts, 35, i, 1);
        auto rng = seeded_rng(opts.seed, 35500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::array<double, kNumPairs> Lm;
        for (auto& v : Lm) v = uni(rng);
        auto F = accel_add(accel_add(f_particular(jet), f_matter(jet.g, Lm)),
                           random_homogeneous_solution(jet.g, rng));
        auto r = hdw_residual(jet, F, &Lm);
        double m = 0;
        for (double v : r) m = std::max(m, std::abs(v));
        return m;
    });
    b.add("bracket-integrability-fp", "transport-field-brackets", 1e-8, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 36, i, 1);
        auto fp_fn = [](const auto& j) { return f_particular(j, 1.0); };
        double m = 0;
        for (int ga = 0; ga < 4; ++ga)
            for (int rh = ga + 1; rh < 4; ++rh) m = std::max(m, integrability_bracket(fp_fn, jet, ga, rh).max_abs());
        return m;
    });

    // --- matter -----------------------------------------------------------
    b.add("em-stress-trace-free", "em-tracelessness", 1e-10, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 37, i, 0);
        auto rng = seeded_rng(opts.seed, 37500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        EMField em;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = m2 + 1; n2 < 4; ++n2) em.set(m2, n2, uni(rng));
        auto T = stress_energy(jet.g, em);
        auto gi = invert_metric(jet.g);
        double tr = 0, scale = 0;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = 0; n2 < 4; ++n2) {
                tr += gi[m2][n2] * T[m2][n2];
                scale = std::max(scale, std::abs(T[m2][n2]));
            }
        return std::abs(tr) / (1.0 + scale);
    });
    b.add("em-stress-two-routes", "source-tensor-vs-closed-form", 1e-9, std::min<long>(N, 200), [&](long i) {
        auto jet = jet_for(opts, 38, i, 0);
        auto rng = seeded_rng(opts.seed, 38500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        EMField em;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = m2 + 1; n2 < 4; ++n2) em.set(m2, n2, uni(rng));
        auto T1 = stress_energy(jet.g, em);
        auto T2 = stress_energy_closed(jet.g, em);
        double m = 0;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = 0; n2 < 4; ++n2) m = std::max(m, rel(T1[m2][n2] - T2[m2][n2], T2[m2][n2]));
        return m;
    });
    b.add("em-vacuum-reduction", "zero-field-constraints", 1e-9, 3, [&](long i) {
        auto fam = load_metric_family(opts.corpus_dir + "/schwarzschild.json");
        auto jet = prolong_family(fam, {0.0, 3.0 + i, 1.0, 0.1}, opts.order);
        EMField zero;
        auto Lm = em_source(jet.g, zero);
        auto el = euler_lagrange(jet);
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) m = std::max(m, std::abs(el[ab] + Lm[ab]));
        return m;
    });
    b.add("em-specific-accel-residual", "alternate-em-acceleration", 1e9, std::min<long>(N, 20), [&](long i) {
        // The source-specific acceleration with the 5/4 coefficient; its
        // field-equation residual is reported without being asserted (the
        // general matter term is the canonical route).
        auto jet = jet_for(opts, 39, i, 1);
        auto rng = seeded_rng(opts.seed, 39500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        EMField em;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = m2 + 1; n2 < 4; ++n2) em.set(m2, n2, uni(rng));
        auto Lm = em_source(jet.g, em);
        auto gm = unpack_metric(jet.g);
        auto gi = invert_metric(jet.g);
        double F2 = 0;
        for (int m2 = 0; m2 < 4; ++m2)
            for (int n2 = 0; n2 < 4; ++n2)
                for (int a = 0; a < 4; ++a)
                    for (int c = 0; c < 4; ++c) F2 += gi[m2][a] * gi[n2][c] * em.F[m2][n2] * em.F[a][c];
        auto F = f_particular(jet, 1.0);
        const double pref = 1.0 / (4.0 * M_PI);
        for (int ab = 0; ab < kNumPairs; ++ab) {
            const int a = kPairList[ab][0], c = kPairList[ab][1];
            for (int m2 = 0; m2 < 4; ++m2)
                for (int n2 = 0; n2 < 4; ++n2) {
                    double cross = 0;
                    for (int l = 0; l < 4; ++l)
                        for (int s = 0; s < 4; ++s) cross += gi[l][s] * em.F[m2][l] * em.F[n2][s];
                    F[ab][m2][n2] += pref * gm[a][c] * (cross - 1.25 * gm[m2][n2] * F2);
                }
        }
        auto r = hdw_residual(jet, F, &Lm);
        double m = 0;
        for (double v : r) m = std::max(m, std::abs(v));
        return m;
    }, /*informational=*/true);

    // --- symmetries ---------------------------------------------------------
    b.add("lift-invariance-residual", "diffeomorphism-invariance", 1e-8, std::min<long>(N, 100), [&](long i) {
        auto jet = jet_for(opts, 40, i);
        auto rng = seeded_rng(opts.seed, 40500 + static_cast<std::uint64_t>(i));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        VectorFieldJets<double> Z;
        for (int n = 0; n < 4; ++n) {
            Z.f[n] = uni(rng);
            for (int a = 0; a < 4; ++a) Z.df[n][a] = uni(rng);
            for (int a = 0; a < 4; ++a)
                for (int m2 = a; m2 < 4; ++m2) {
                    const double v = uni(rng);
                    Z.d2f[n][a][m2] = Z.d2f[n][m2][a] = v;
                }
            for (int a = 0; a < 4; ++a)
                for (int m2 = a; m2 < 4; ++m2)
                    for (int t = m2; t < 4; ++t) {
                        const double v = uni(rng);
                        Z.d3f[n][a][m2][t] = Z.d3f[n][a][t][m2] = Z.d3f[n][m2][a][t] = v;
                        Z.d3f[n][m2][t][a] = Z.d3f[n][t][a][m2] = Z.d3f[n][t][m2][a] = v;
                    }
        }
        auto r = lagrangian_symmetry_residual(Z, jet);
        return r.residual / r.scale;
    });
    b.add("noether-divergence-vacuum", "conserved-current", 1e-6, 50, [&](long i) {
        auto fam = load_metric_family(opts.corpus_dir + "/schwarzschild.json");
        static const char* zdefs[5][4] = {{"1", "0", "0", "0"},
                                          {"t", "0", "0", "0"},
                                          {"t*t", "0.1*r", "0", "0"},
                                          {"0", "0.05*r*r", "0.1*theta", "0"},
                                          {"0.3*r", "0.2*t", "0", "0.1*phi"}};
        static const double pts[10][4] = {{0.0, 2.6, 1.2, 0.3}, {0.2, 3.0, 1.0, 0.5}, {0.5, 3.5, 0.9, 1.0},
                                          {1.0, 4.0, 1.4, 0.2}, {0.1, 4.8, 1.1, 2.0}, {0.7, 5.5, 1.3, 0.8},
                                          {0.3, 6.5, 0.8, 1.5}, {0.9, 8.0, 1.2, 0.6}, {0.4, 10.0, 1.0, 1.1},
                                          {0.6, 12.0, 1.35, 0.9}};
        const auto& zd = zdefs[i / 10];
        const auto& pt = pts[i % 10];
        VectorFieldFamily z;
        for (int k = 0; k < 4; ++k) z.components[k] = parse_expression(zd[k]);
        z.coord_names = fam.coord_names;
        auto cur = noether_current(z, fam, {pt[0], pt[1], pt[2], pt[3]});
        double smax = 0;
        for (double v : cur.S) smax = std::max(smax, std::abs(v));
        return std::abs(cur.divergence) / (1.0 + smax);
    });

    // --- evolution ------------------------------------------------------------
    const std::array<double, 3> vac_p = {2.0 / 3.0, 2.0 / 3.0, -1.0 / 3.0};
    b.add("evolution-kasner-endpoint", "one-coordinate-reduction", 1e-5, 1, [&](long) {
        auto traj = integrate(kasner(vac_p, 1.0), 2.0, 1e-3);
        if (!traj.completed) return 1.0;
        auto expect = kasner(vac_p, 2.0);
        double m = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) {
            m = std::max(m, std::abs(traj.points.back().g[ab] - expect.g[ab]));
            m = std::max(m, std::abs(traj.points.back().v[ab] - expect.v[ab]));
        }
        return m;
    });
    b.add("evolution-ricci-tracking", "solution-equivalence", 1e-6, 1, [&](long) {
        auto traj = integrate(kasner(vac_p, 1.0), 2.0, 1e-3);
        return traj.completed ? traj.max_ricci : 1.0;
    });
    b.add("rk4-order(|ratio-16|)", "integrator-order", 4.0, 1, [&](long) {
        auto err = [&](double h) {
            auto traj = integrate(kasner(vac_p, 1.0), 1.5, h);
            auto expect = kasner(vac_p, 1.5);
            double m = 0;
            for (int ab = 0; ab < kNumPairs; ++ab)
                m = std::max(m, std::abs(traj.points.back().g[ab] - expect.g[ab]));
            return m;
        };
        const double ratio = err(2e-2) / err(1e-2);
        return std::abs(ratio - 16.0);
    });

    return report;
}

}  // namespace covgrav
