#pragma once

// Second-order evolution of metrics depending on one coordinate. The
// acceleration is F^P + F^h where the homogeneous part is closed by forcing
// zero spatial second derivatives (F^h = -F^P off the (0,0) block) and
// solving the 10 trace conditions for the remaining block. Classic RK4 with
// Ricci-norm tracking along the trajectory.

#include <string>
#include <vector>

#include "covgrav/multivector.hpp"

namespace covgrav {

struct EvolState {
    double t = 0.0;
    std::array<double, kNumPairs> g{};
    std::array<double, kNumPairs> v{};  // g_{ab,0}
};

struct ClosureResult {
    AccelField Fh{};                        // the homogeneous completion
    std::array<double, kNumPairs> accel{};  // resulting g_ddot (the (0,0) block of F^P + F^h)
    double solve_residual = 0.0;
};

MetricJet state_jet(const EvolState& s);

// F^h with -F^P spatial blocks and the (0,0) block from the trace-condition
// linear system (least-norm when singular). Throws when the system is
// inconsistent beyond 1e-8.
ClosureResult closure_fh(const EvolState& s);

struct TrajectoryPoint {
    double t;
    std::array<double, kNumPairs> g;
    std::array<double, kNumPairs> v;
    double ricci_norm;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    double max_ricci = 0.0;
    bool completed = false;
    std::string halt_reason;
};

// Fixed-step RK4 on (g, v); every accepted state must stay Lorentzian and
// keep the Ricci norm of its closed 2-jet below tol_track.
Trajectory integrate(const EvolState& initial, double t_end, double h, double tol_track = 1e-6);

// Closed-form diagonal power-law state: g = diag(-1, t^{2 p_i}); vacuum when
// sum p = sum p^2 = 1.
EvolState kasner(const std::array<double, 3>& p, double t);

double ricci_norm_of_state(const EvolState& s, const std::array<double, kNumPairs>& accel);

void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace covgrav
