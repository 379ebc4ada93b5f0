#include "covgrav/noether.hpp"

namespace covgrav {

SymmetryResidual lagrangian_symmetry_residual(const VectorFieldJets<double>& Z, const MetricJet& jet) {
    auto lift = canonical_lift(Z, promote_jet<double>(jet));
    auto s = seed_jet(jet, 2);
    auto L = lagrangian_vacuum(s.jet);
    const auto& lay = s.layout;

    double acc = 0.0, scale = 1.0;
    for (int ab = 0; ab < kNumPairs; ++ab) {
        double t = lift.Yab[ab] * L.grad(lay.ig(ab));
        acc += t;
        scale = std::max(scale, std::abs(t));
        for (int mu = 0; mu < 4; ++mu) {
            t = lift.Yabm[ab][mu] * L.grad(lay.idg(ab, mu));
            acc += t;
            scale = std::max(scale, std::abs(t));
        }
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu; nu < 4; ++nu) {
                t = lift.Yabmn[ab][mu][nu] * L.grad(lay.id2g(ab, pair_index(mu, nu)));
                acc += t;
                scale = std::max(scale, std::abs(t));
            }
    }
    // The invariant object is the density L d^4x: the coordinate derivative
    // of L along the lift (no explicit x-dependence) plus the volume
    // transport L * div f must cancel.
    double divf = 0.0;
    for (int mu = 0; mu < 4; ++mu) divf += Z.df[mu][mu];
    const double vol = L.v * divf;
    acc += vol;
    scale = std::max(scale, std::abs(vol));
    return SymmetryResidual{std::abs(acc), scale};
}

namespace {

template <class Extract>
void fill_jets(const VectorFieldFamily& vf, const std::array<std::string, 4>& coord_names,
               const std::array<double, 4>& point, int order, Extract&& extract) {
    for (int n = 0; n < 4; ++n) {
        TaylorJet t = evaluate_component(*vf.components[n], coord_names, vf.parameters, point, order);
        extract(n, t);
    }
}

}  // namespace

VectorFieldJets<double> vector_field_jets(const VectorFieldFamily& vf,
                                          const std::array<std::string, 4>& coord_names,
                                          const std::array<double, 4>& point) {
    VectorFieldJets<double> Z;
    fill_jets(vf, coord_names, point, 3, [&](int n, const TaylorJet& t) {
        Z.f[n] = t.value();
        for (int a = 0; a < 4; ++a) {
            std::array<int, 4> e{};
            e[a] = 1;
            Z.df[n][a] = t.partial(e);
            for (int m = 0; m < 4; ++m) {
                std::array<int, 4> e2{};
                e2[a] += 1;
                e2[m] += 1;
                Z.d2f[n][a][m] = t.partial(e2);
                for (int tau = 0; tau < 4; ++tau) {
                    std::array<int, 4> e3{};
                    e3[a] += 1;
                    e3[m] += 1;
                    e3[tau] += 1;
                    Z.d3f[n][a][m][tau] = t.partial(e3);
                }
            }
        }
    });
    return Z;
}

VectorFieldJets<TaylorJet> vector_field_jets_taylor(const VectorFieldFamily& vf,
                                                    const std::array<std::string, 4>& coord_names,
                                                    const std::array<double, 4>& point, int jet_order) {
    VectorFieldJets<TaylorJet> Z;
    const int eval_order = std::min(jet_order + 3, kMaxJetOrder);
    fill_jets(vf, coord_names, point, eval_order, [&](int n, const TaylorJet& t) {
        Z.f[n] = t.truncated(jet_order);
        for (int a = 0; a < 4; ++a) {
            auto da = t.derivative(a);
            Z.df[n][a] = da.truncated(jet_order);
            for (int m = 0; m < 4; ++m) {
                auto dam = da.derivative(m);
                Z.d2f[n][a][m] = dam.truncated(jet_order);
                for (int tau = 0; tau < 4; ++tau) Z.d3f[n][a][m][tau] = dam.derivative(tau).truncated(jet_order);
            }
        }
    });
    return Z;
}

NoetherCurrent noether_current(const VectorFieldFamily& Z, const MetricFamily& fam,
                               const std::array<double, 4>& point) {
    const auto& coords = Z.coord_names[0].empty() ? fam.coord_names : Z.coord_names;
    auto jets = prolong_family_jets(fam, point, 1);
    auto zjets = vector_field_jets_taylor(Z, coords, point, 1);
    auto S = noether_current_values(zjets, jets);
    NoetherCurrent out;
    double div = 0.0;
    for (int rho = 0; rho < 4; ++rho) {
        out.S[rho] = S[rho].value();
        div += S[rho].derivative(rho).value();
    }
    out.divergence = div;
    return out;
}

}  // namespace covgrav
