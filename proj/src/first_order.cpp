#include <Eigen/Dense>

#include "covgrav/first_order.hpp"
#include "covgrav/legendre.hpp"

namespace covgrav {

int first_order_regularity_rank(const MetricJet& jet) {
    auto J = first_order_momentum_jacobian(jet);
    Eigen::MatrixXd M(40, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) M(i, j) = J[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    const double tol = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return rank;
}

PairVec4<double> invert_first_order_momenta(const std::array<double, kNumPairs>& g, const PairVec4<double>& pbar,
                                            double tol, int max_iter) {
    MetricJet jet;
    jet.order = 3;
    jet.g = g;
    // seed: treat the target as second-order momenta; exact inverse of the
    // second-order map is close enough to start Newton
    jet.dg = invert_momenta(g, pbar);

    for (int iter = 0; iter < max_iter; ++iter) {
        auto p = first_order_momenta(jet);
        Eigen::VectorXd r(40);
        double rmax = 0.0;
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) {
                r(4 * ab + mu) = p[ab][mu] - pbar[ab][mu];
                rmax = std::max(rmax, std::abs(r(4 * ab + mu)));
            }
        if (rmax < tol) return jet.dg;

        auto J = first_order_momentum_jacobian(jet);
        Eigen::MatrixXd M(40, 40);
        for (int i = 0; i < 40; ++i)
            for (int j = 0; j < 40; ++j) M(i, j) = J[i][j];
        Eigen::VectorXd step = M.partialPivLu().solve(r);
        for (int ab = 0; ab < kNumPairs; ++ab)
            for (int mu = 0; mu < 4; ++mu) jet.dg[ab][mu] -= step(4 * ab + mu);
    }
    throw std::runtime_error("first-order momentum inversion did not converge");
}

}  // namespace covgrav
