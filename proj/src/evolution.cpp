#include "covgrav/evolution.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>

#include "covgrav/metric_family.hpp"

namespace covgrav {

MetricJet state_jet(const EvolState& s) {
    MetricJet jet;
    jet.order = 1;
    jet.x = {s.t, 0.0, 0.0, 0.0};
    jet.g = s.g;
    for (int ab = 0; ab < kNumPairs; ++ab) jet.dg[ab][0] = s.v[ab];
    return jet;
}

ClosureResult closure_fh(const EvolState& s) {
    auto jet = state_jet(s);
    auto FP = f_particular(jet);
    auto alg = metric_algebra(jet.g);

    // Unknown d_{ab}: the (0,0) block of F = F^P + F^h; all other blocks of F
    // vanish. Trace condition on F^h = F - F^P reads  Tr(D)[et] = Tr(F^P)[et]
    // with D_{ab;mu,nu} = d_{ab} delta_mu0 delta_nu0.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(kNumPairs, kNumPairs);
    Eigen::VectorXd b(kNumPairs);
    auto trace_fp = homogeneous_residual(FP, jet.g);
    for (int et = 0; et < kNumPairs; ++et) {
        const int e = kPairList[et][0], t = kPairList[et][1];
        A(et, et) += alg.ginv[0][0];
        if (e == 0 && t == 0)
            for (int l = 0; l < 4; ++l)
                for (int ss = 0; ss < 4; ++ss) A(et, pair_index(l, ss)) += alg.ginv[l][ss];
        if (t == 0)
            for (int l = 0; l < 4; ++l) A(et, pair_index(l, e)) -= alg.ginv[l][0];
        if (e == 0)
            for (int l = 0; l < 4; ++l) A(et, pair_index(l, t)) -= alg.ginv[l][0];
        b(et) = trace_fp[et];
    }
    // The system is rank-deficient (the (0,j) rows are the momentum
    // constraints on the data and vanish on the unknowns); the least-norm
    // solution is exact on constraint-satisfying states and projects out the
    // O(h^2) drift of integrator stage points. The residual is reported so
    // accepted trajectory states can enforce consistency.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
    cod.setThreshold(1e-10);
    Eigen::VectorXd d = cod.solve(b);
    const double resid = (A * d - b).cwiseAbs().maxCoeff();

    ClosureResult r;
    r.solve_residual = resid;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        r.accel[ab] = d(ab);
        for (int m = 0; m < 4; ++m)
            for (int n = 0; n < 4; ++n) r.Fh[ab][m][n] = -FP[ab][m][n];
        r.Fh[ab][0][0] += d(ab);
    }
    return r;
}

double ricci_norm_of_state(const EvolState& s, const std::array<double, kNumPairs>& accel) {
    auto jet = state_jet(s);
    jet.order = 2;
    for (int ab = 0; ab < kNumPairs; ++ab) jet.d2g[ab][pair_index(0, 0)] = accel[ab];
    auto ric = ricci(jet);
    double m = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) m = std::max(m, std::abs(ric[a][b]));
    return m;
}

EvolState kasner(const std::array<double, 3>& p, double t) {
    if (t <= 0.0) throw std::invalid_argument("power-law state needs t > 0");
    EvolState s;
    s.t = t;
    s.g[pair_index(0, 0)] = -1.0;
    s.v[pair_index(0, 0)] = 0.0;
    for (int i = 0; i < 3; ++i) {
        s.g[pair_index(i + 1, i + 1)] = std::pow(t, 2.0 * p[i]);
        s.v[pair_index(i + 1, i + 1)] = 2.0 * p[i] * std::pow(t, 2.0 * p[i] - 1.0);
    }
    return s;
}

Trajectory integrate(const EvolState& initial, double t_end, double h, double tol_track) {
    if (h <= 0.0) throw std::invalid_argument("step size must be positive");
    Trajectory traj;

    auto deriv = [](const EvolState& s) {
        auto cl = closure_fh(s);
        return std::pair<std::array<double, kNumPairs>, std::array<double, kNumPairs>>{s.v, cl.accel};
    };
    auto advance = [](const EvolState& s, double dt, const std::array<double, kNumPairs>& dg,
                      const std::array<double, kNumPairs>& dv) {
        EvolState r = s;
        r.t += dt;
        for (int ab = 0; ab < kNumPairs; ++ab) {
            r.g[ab] += dt * dg[ab];
            r.v[ab] += dt * dv[ab];
        }
        return r;
    };

    EvolState s = initial;
    const int steps = static_cast<int>(std::llround((t_end - initial.t) / h));
    auto accept = [&](const EvolState& st) {
        check_signature(st.g);
        auto cl = closure_fh(st);
        if (cl.solve_residual > 1e-8)
            throw std::runtime_error("closure trace system inconsistent (residual " +
                                     std::to_string(cl.solve_residual) + ") at step " +
                                     std::to_string(traj.points.size()));
        const double rn = ricci_norm_of_state(st, cl.accel);
        traj.points.push_back({st.t, st.g, st.v, rn});
        traj.max_ricci = std::max(traj.max_ricci, rn);
        if (rn > tol_track)
            throw std::runtime_error("constraint drift: Ricci norm " + std::to_string(rn) + " at step " +
                                     std::to_string(traj.points.size() - 1));
    };

    try {
        accept(s);
        for (int k = 0; k < steps; ++k) {
            auto k1 = deriv(s);
            auto k2 = deriv(advance(s, 0.5 * h, k1.first, k1.second));
            auto k3 = deriv(advance(s, 0.5 * h, k2.first, k2.second));
            auto k4 = deriv(advance(s, h, k3.first, k3.second));
            EvolState next = s;
            next.t += h;
            for (int ab = 0; ab < kNumPairs; ++ab) {
                next.g[ab] += h / 6.0 * (k1.first[ab] + 2 * k2.first[ab] + 2 * k3.first[ab] + k4.first[ab]);
                next.v[ab] += h / 6.0 * (k1.second[ab] + 2 * k2.second[ab] + 2 * k3.second[ab] + k4.second[ab]);
            }
            s = next;
            accept(s);
        }
        traj.completed = true;
    } catch (const std::exception& err) {
        traj.completed = false;
        traj.halt_reason = err.what();
    }
    return traj;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << "t";
        for (int ab = 0; ab < kNumPairs; ++ab)
            out << ",g" << kPairList[ab][0] << kPairList[ab][1];
        for (int ab = 0; ab < kNumPairs; ++ab)
            out << ",v" << kPairList[ab][0] << kPairList[ab][1];
        out << ",ricci_norm\n";
        out.precision(17);
        for (const auto& p : traj.points) {
            out << p.t;
            for (int ab = 0; ab < kNumPairs; ++ab) out << "," << p.g[ab];
            for (int ab = 0; ab < kNumPairs; ++ab) out << "," << p.v[ab];
            out << "," << p.ricci_norm << "\n";
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move trajectory into place at '" + path + "'");
}

}  // namespace covgrav
