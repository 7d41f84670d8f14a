#include "so3fit/quadrature.hpp"

#include <cmath>

#include "so3fit/errors.hpp"

namespace so3fit {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    if(n < 1)
        throw InvalidArgumentError("gauss_legendre: need at least one node");
    nodes.resize(n);
    weights.resize(n);
    for(int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for(int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for(int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if(std::abs(dx) < 1e-15)
                break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

QuadratureRule haar_quadrature(int n)
{
    if(n < 0)
        throw InvalidArgumentError("haar_quadrature: degree must be nonnegative");

    const int n_theta = n + 1;
    const int n_phi = 2 * n + 2;
    std::vector<double> t, w;
    gauss_legendre(n_theta, t, w);

    std::vector<QuadratureNode> nodes;
    nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi * n_phi);
    for(int b = 0; b < n_theta; ++b) {
        const double theta = std::acos(t[b]);
        const double wt = w[b] / (2.0 * n_phi * n_phi);
        const Rotation rx = rotation_x(theta);
        for(int a = 0; a < n_phi; ++a) {
            const Rotation left = rotation_z(2.0 * M_PI * a / n_phi) * rx;
            for(int c = 0; c < n_phi; ++c)
                nodes.push_back({left * rotation_z(2.0 * M_PI * c / n_phi), wt});
        }
    }
    return QuadratureRule(std::move(nodes), n);
}

} // namespace so3fit
