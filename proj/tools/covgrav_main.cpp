// Command-line entry point: identity-suite verification over random jets,
// constraint checks of metric families at a point, conserved-current
// evaluation, and one-coordinate evolution. Exit codes: 0 pass, 1 check
// failure, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "covgrav/evolution.hpp"
#include "covgrav/legendre.hpp"
#include "covgrav/matter_em.hpp"
#include "covgrav/metric_family.hpp"
#include "covgrav/noether.hpp"
#include "covgrav/verify_suite.hpp"

#ifndef COVGRAV_DEFAULT_CORPUS_DIR
#define COVGRAV_DEFAULT_CORPUS_DIR "corpus"
#endif

using namespace covgrav;

namespace {

std::array<double, 4> parse_point(const std::string& at) {
    std::array<double, 4> p{};
    std::stringstream ss(at);
    std::string tok;
    int k = 0;
    while (std::getline(ss, tok, ',')) {
        if (k >= 4) throw CLI::ValidationError("--at", "expected exactly 4 comma-separated coordinates");
        p[k++] = std::stod(tok);
    }
    if (k != 4) throw CLI::ValidationError("--at", "expected exactly 4 comma-separated coordinates");
    return p;
}

void emit_report(const Report& r, const std::string& output, const std::string& format) {
    print_report(r);
    if (output.empty()) return;
    if (format == "csv") {
        const std::string tmp = output + ".tmp";
        std::ofstream out(tmp);
        out << "name,max_residual,tolerance,pass,paper_ref,samples\n";
        for (const auto& c : r.checks)
            out << c.name << "," << c.max_residual << "," << c.tolerance << "," << (c.pass ? 1 : 0) << ","
                << c.paper_ref << "," << c.samples << "\n";
        out.close();
        if (std::rename(tmp.c_str(), output.c_str()) != 0)
            throw std::runtime_error("cannot move report into place at '" + output + "'");
    } else {
        write_report(r, output);
    }
}

CheckEntry make_check(const std::string& name, const std::string& tag, double residual, double tol,
                      long samples = 1) {
    CheckEntry e;
    e.name = name;
    e.paper_ref = tag;
    e.max_residual = residual;
    e.tolerance = tol;
    e.samples = samples;
    e.pass = residual < tol;
    return e;
}

Report base_report(const std::string& suite) {
    Report r;
    r.suite = suite;
    r.version = kVersion;
    r.c0_factor = particular_solution_factor();
    r.timestamp = current_timestamp();
    return r;
}

int run_check(const std::string& metric_file, const std::string& at, double tol_override,
              const std::string& output, const std::string& format, int order) {
    auto fam = load_metric_family(metric_file);
    auto point = parse_point(at);
    auto jet = prolong_family(fam, point, order);
    auto fields = eh_fields(jet);
    auto mom = legendre(jet);
    auto res = unified_residuals(jet, mom);
    const double rho = metric_algebra(jet.g).rho;

    Report r = base_report("constraint-check:" + fam.name);
    auto scaled = [&](double v) { return v / (1.0 + rho); };
    double el = 0, del = 0;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        el = std::max(el, std::abs(fields.EL[ab]));
        for (int tau = 0; tau < 4; ++tau) del = std::max(del, std::abs(fields.DEL[ab][tau]));
    }
    const double t_el = tol_override > 0 ? tol_override : 1e-8;
    const double t_del = tol_override > 0 ? tol_override : 1e-6;
    r.tolerance = tol_override;
    r.checks.push_back(make_check("einstein-block", "vacuum-constraints", scaled(el), t_el));
    r.checks.push_back(make_check("d-einstein-block", "prolonged-constraints", scaled(del), t_del));
    r.checks.push_back(
        make_check("momentum-definition-block", "legendre-image", res.max_momentum(), 1e-12));
    r.checks.push_back(make_check("hamiltonian-two-forms", "kernel-vs-legendre-combination",
                                  std::abs(fields.H - hamiltonian_legendre(jet)) / (1.0 + std::abs(fields.H)),
                                  1e-9));
    if (fam.has_em_field()) {
        EMField em;
        em.F = em_field_at(fam, point);
        auto Lm = em_source(jet.g, em);
        double sourced = 0;
        for (int ab = 0; ab < kNumPairs; ++ab) sourced = std::max(sourced, std::abs(fields.EL[ab] + Lm[ab]));
        r.checks.push_back(
            make_check("sourced-einstein-block", "matter-constraints", scaled(sourced), t_el));
    }
    std::printf("point (%.6g, %.6g, %.6g, %.6g): L = %.9g  H = %.9g  rho = %.9g\n", point[0], point[1],
                point[2], point[3], fields.L, fields.H, rho);
    emit_report(r, output, format);
    return r.all_pass() ? 0 : 1;
}

int run_noether(const std::string& metric_file, const std::string& vector_file,
                const std::vector<std::string>& at, const std::string& output, const std::string& format) {
    auto fam = load_metric_family(metric_file);
    auto zf = load_vector_field(vector_file);
    Report r = base_report("conserved-current:" + fam.name);
    for (const auto& a : at) {
        auto point = parse_point(a);
        auto cur = noether_current(zf, fam, point);
        double smax = 0;
        for (double v : cur.S) smax = std::max(smax, std::abs(v));
        std::printf("at (%s): S = [%.9g, %.9g, %.9g, %.9g]  div = %.3e\n", a.c_str(), cur.S[0], cur.S[1],
                    cur.S[2], cur.S[3], cur.divergence);
        r.checks.push_back(make_check("divergence@" + a, "conserved-current",
                                      std::abs(cur.divergence) / (1.0 + smax), 1e-6));
    }
    emit_report(r, output, format);
    return r.all_pass() ? 0 : 1;
}

EvolState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    EvolState s;
    s.t = j.value("t", 0.0);
    auto jg = j.at("g"), jv = j.at("v");
    if (jg.size() != kNumPairs || jv.size() != kNumPairs)
        throw std::runtime_error("state file needs 10 entries in \"g\" and \"v\"");
    for (int ab = 0; ab < kNumPairs; ++ab) {
        s.g[ab] = jg.at(ab).get<double>();
        s.v[ab] = jv.at(ab).get<double>();
    }
    return s;
}

int run_integrate(const std::string& kasner_p, const std::string& from, double t0, double t1, double h,
                  const std::string& output, const std::string& format, const std::string& report_path) {
    EvolState initial;
    if (!kasner_p.empty()) {
        std::array<double, 3> p{};
        std::stringstream ss(kasner_p);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',') && k < 3) p[k++] = std::stod(tok);
        if (k != 3) throw CLI::ValidationError("--kasner", "expected 3 comma-separated exponents");
        initial = kasner(p, t0);
    } else if (!from.empty()) {
        initial = load_state(from);
        initial.t = t0;
    } else {
        throw CLI::ValidationError("integrate", "provide --kasner or --from");
    }

    auto traj = integrate(initial, t1, h);
    if (!output.empty()) write_trajectory_csv(traj, output);

    Report r = base_report("evolution");
    r.checks.push_back(make_check("ricci-tracking", "solution-equivalence", traj.max_ricci, 1e-6,
                                  static_cast<long>(traj.points.size())));
    r.checks.push_back(make_check("completed", "trajectory", traj.completed ? 0.0 : 1.0, 0.5));
    if (!traj.completed) std::printf("halt: %s\n", traj.halt_reason.c_str());
    std::printf("steps: %zu  max ricci norm: %.3e%s\n", traj.points.size(), traj.max_ricci,
                output.empty() ? "" : ("  trajectory: " + output).c_str());
    emit_report(r, report_path, format);
    return r.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical engine for covariant metric field equations"};
    app.set_help_flag("--help", "print usage");  // keep -h free for the step size
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    long samples = 1000;
    double tolerance = 0.0;
    int order = 3;
    std::string output, format = "json", corpus = COVGRAV_DEFAULT_CORPUS_DIR;

    auto* verify = app.add_subcommand("verify", "run the cross-module identity suite on random jets");
    verify->add_option("--samples", samples, "random jets per check");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--tolerance", tolerance, "override every check tolerance");
    verify->add_option("--order", order, "prolongation order for corpus checks")->check(CLI::IsMember({3, 4}));
    verify->add_option("--output", output, "write the JSON/CSV report here");
    verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--corpus", corpus, "metric corpus directory");

    std::string metric_file, vector_file, at = "0,0,0,0";
    std::vector<std::string> at_list;
    auto* check = app.add_subcommand("check", "evaluate the constraint blocks of a metric family at a point");
    check->add_option("metric", metric_file, "metric JSON file")->required();
    check->add_option("--at", at, "evaluation point x0,x1,x2,x3");
    check->add_option("--tolerance", tolerance, "override the block tolerances");
    check->add_option("--order", order, "prolongation order")->check(CLI::IsMember({3, 4}));
    check->add_option("--output", output, "write the report here");
    check->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));

    auto* noe = app.add_subcommand("noether", "evaluate the conserved current of a generator field");
    noe->add_option("metric", metric_file, "metric JSON file")->required();
    noe->add_option("vector", vector_file, "vector-field JSON file")->required();
    noe->add_option("--at", at_list, "evaluation point(s) x0,x1,x2,x3")->required();
    noe->add_option("--output", output, "write the report here");
    noe->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));

    std::string kasner_p, from_state, traj_out, report_out;
    double t0 = 1.0, t1 = 2.0, h = 1e-3;
    auto* integ = app.add_subcommand("integrate", "integrate the one-coordinate evolution system");
    integ->add_option("--kasner", kasner_p, "power-law initial data p1,p2,p3");
    integ->add_option("--from", from_state, "initial state JSON file");
    integ->add_option("--t0", t0, "initial coordinate value");
    integ->add_option("--t1", t1, "final coordinate value");
    integ->add_option("--h", h, "step size");
    integ->add_option("--output", traj_out, "trajectory CSV path");
    integ->add_option("--report", report_out, "write the summary report here");
    integ->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);

        if (*verify) {
            if (samples <= 0) {
                std::cerr << "verify: --samples must be positive\n";
                return 2;
            }
            VerifyOptions opts;
            opts.seed = seed;
            opts.samples = samples;
            opts.tolerance_override = tolerance;
            opts.order = order;
            opts.corpus_dir = corpus;
            auto report = run_verify(opts);
            emit_report(report, output, format);
            return report.all_pass() ? 0 : 1;
        }
        if (*check) return run_check(metric_file, at, tolerance, output, format, order);
        if (*noe) return run_noether(metric_file, vector_file, at_list, output, format);
        if (*integ) return run_integrate(kasner_p, from_state, t0, t1, h, traj_out, format, report_out);
        return 2;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
