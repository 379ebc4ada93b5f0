#include <Eigen/Dense>

#include "covgrav/legendre.hpp"

namespace covgrav {

// Jacobian of (x, g, dg, p1, p2) with respect to all 354 jet coordinates.
// The momenta depend on (g, dg) only, so the second/third-derivative columns
// vanish identically; they are kept to make the ambient degeneracy explicit.
int legendre_rank(const MetricJet& jet) {
    auto s = seed_jet(jet, 1, /*seed_x=*/true);  // 54 active columns
    auto m = legendre_t(s.jet);
    const auto& lay = s.layout;

    const int rows = kDim + kNumPairs + kNumPairs * kDim + kNumPairs * kDim + kNumPairs * kNumPairs;
    const int cols = 354;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, cols);

    int row = 0;
    auto fill_grad = [&](const Dual<double>& v) {
        if (!v.d.empty())
            for (int c = 0; c < lay.dim; ++c) J(row, c) = v.d[static_cast<size_t>(c)];
        ++row;
    };
    for (int mu = 0; mu < kDim; ++mu) fill_grad(s.jet.x[mu]);
    for (int ab = 0; ab < kNumPairs; ++ab) fill_grad(s.jet.g[ab]);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) fill_grad(s.jet.dg[ab][mu]);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mu = 0; mu < kDim; ++mu) fill_grad(m.p1[ab][mu]);
    for (int ab = 0; ab < kNumPairs; ++ab)
        for (int mn = 0; mn < kNumPairs; ++mn) fill_grad(m.p2[ab][mn]);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double tol = 1e-10 * sv(0);
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) ++rank;
    return rank;
}

}  // namespace covgrav
