#include "covgrav/matter_em.hpp"

namespace covgrav {

std::array<std::array<double, 4>, 4> stress_energy(const std::array<double, kNumPairs>& g, const EMField& em) {
    auto Lm = em_source(g, em);
    auto alg = metric_algebra(g);
    auto gm = unpack_metric(g);
    const double pref = em.c * em.c * em.c * em.c / (8.0 * M_PI * em.G * alg.rho);
    std::array<std::array<double, 4>, 4> T{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double acc = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    acc += gm[a][mu] * gm[b][nu] * Lm[pair_index(a, b)] / pair_mult(a, b);
            T[mu][nu] = pref * acc;
        }
    return T;
}

std::array<std::array<double, 4>, 4> stress_energy_closed(const std::array<double, kNumPairs>& g,
                                                          const EMField& em) {
    auto alg = metric_algebra(g);
    auto gm = unpack_metric(g);
    double F2 = 0.0;
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) F2 += alg.ginv[m][a] * alg.ginv[n][b] * em.F[m][n] * em.F[a][b];
    const double pref = em.c * em.c * em.c * em.c / (4.0 * M_PI * em.G);
    std::array<std::array<double, 4>, 4> T{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double cross = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) cross += alg.ginv[a][b] * em.F[mu][a] * em.F[nu][b];
            T[mu][nu] = pref * (0.25 * gm[mu][nu] * F2 - cross);
        }
    return T;
}

}  // namespace covgrav
