#include "so3fit/wigner.hpp"

#include <cmath>

#include "so3fit/errors.hpp"

namespace so3fit {

double chebyshev_u(int n, double t)
{
    if(n < 0)
        throw InvalidArgumentError("chebyshev_u: degree must be nonnegative");
    if(std::abs(t) > 1.0 + 1e-12)
        throw InvalidArgumentError("chebyshev_u: argument outside [-1, 1]");
    t = t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t);
    double u0 = 1.0, u1 = 2.0 * t;
    if(n == 0)
        return u0;
    for(int k = 2; k <= n; ++k) {
        const double u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

int polynomial_dimension(int l0)
{
    int dim = 0;
    for(int l = 0; l <= l0; ++l)
        dim += (2 * l + 1) * (2 * l + 1);
    return dim;
}

WignerEvaluator::WignerEvaluator(int band, int degree_cap) : band_(band)
{
    if(band < 0)
        throw InvalidArgumentError("WignerEvaluator: band must be nonnegative");
    if(band > degree_cap)
        throw UnsupportedDegreeError("WignerEvaluator: degree " + std::to_string(band) +
            " above cap " + std::to_string(degree_cap));
    table_.assign(band_offset(band + 1), {0.0, 0.0});
    jacobi_.resize(band + 1);
}

void WignerEvaluator::evaluate(const Rotation& x)
{
    evaluate(to_euler(x));
}

void WignerEvaluator::evaluate(const EulerAngles& e)
{
    const int L = band_;
    const double t = std::cos(e.theta);
    const double sh = std::sin(0.5 * e.theta); // sin(theta/2) >= 0 on [0, pi]
    const double ch = std::cos(0.5 * e.theta);

    // phase tables e^{-ik phi} and the i^{k-m} factor folded in below
    std::vector<std::complex<double>> e1(2 * L + 1), e2(2 * L + 1);
    for(int k = -L; k <= L; ++k) {
        e1[k + L] = std::polar(1.0, -k * e.phi1);
        e2[k + L] = std::polar(1.0, -k * e.phi2);
    }
    static const std::complex<double> I_POW[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

    for(int k = -L; k <= L; ++k) {
        for(int m = -L; m <= L; ++m) {
            const int lmin = std::max(std::abs(k), std::abs(m));
            if(lmin > L)
                continue;
            const int mu = std::abs(k - m);
            const int nu = std::abs(k + m);
            const int nmax = L - lmin;

            // normalized Jacobi part: values N(n) * P_n^{(mu,nu)}(t) for n = 0..nmax,
            // with N(n) = sqrt(n! (n+mu+nu)! / ((n+mu)! (n+nu)!))
            double p0 = 1.0, p1 = 0.0;
            jacobi_[0] = 1.0;
            if(nmax >= 1) {
                p1 = 0.5 * (mu - nu) + (1.0 + 0.5 * (mu + nu)) * t;
                jacobi_[1] = p1;
            }
            for(int n = 2; n <= nmax; ++n) {
                const double apb = mu + nu;
                const double c1 = 2.0 * n * (n + apb) * (2 * n + apb - 2);
                const double c2 = (2 * n + apb - 1) *
                    ((2 * n + apb) * (2 * n + apb - 2) * t + (mu - nu) * (mu + nu));
                const double c3 = 2.0 * (n + mu - 1) * (n + nu - 1) * (2 * n + apb);
                const double p2 = (c2 * p1 - c3 * p0) / c1;
                p0 = p1;
                p1 = p2;
                jacobi_[n] = p2;
            }
            double norm = 1.0; // N(0)^2 = binomial(mu+nu, mu)
            for(int i = 1; i <= mu; ++i)
                norm *= static_cast<double>(nu + i) / i;
            norm = std::sqrt(norm);

            const double sign = (m >= k) ? 1.0 : ((k - m) % 2 == 0 ? 1.0 : -1.0);
            const double envelope = sign * std::pow(sh, mu) * std::pow(ch, nu);
            const std::complex<double> phase =
                I_POW[((k - m) % 4 + 4) % 4] * e1[k + L] * e2[m + L];

            for(int n = 0; n <= nmax; ++n) {
                const int l = lmin + n;
                table_[band_index(l, k, m)] = phase * (envelope * norm * jacobi_[n]);
                // N(n+1)/N(n)
                if(n < nmax)
                    norm *= std::sqrt((n + 1.0) * (n + 1.0 + mu + nu) /
                        ((n + 1.0 + mu) * (n + 1.0 + nu)));
            }
        }
    }
}

Eigen::MatrixXcd wigner_d_matrix(int l, const Rotation& x, int degree_cap)
{
    if(l < 0)
        throw InvalidArgumentError("wigner_d_matrix: degree must be nonnegative");
    if(l > degree_cap)
        throw UnsupportedDegreeError("wigner_d_matrix: degree " + std::to_string(l) +
            " above cap " + std::to_string(degree_cap));
    WignerEvaluator eval(l, degree_cap);
    eval.evaluate(x);
    Eigen::MatrixXcd D(2 * l + 1, 2 * l + 1);
    for(int k = -l; k <= l; ++k)
        for(int m = -l; m <= l; ++m)
            D(k + l, m + l) = eval.coef(l, k, m);
    return D;
}

double character(int l, const Rotation& x, int degree_cap)
{
    if(l < 0)
        throw InvalidArgumentError("character: degree must be nonnegative");
    if(l > degree_cap)
        throw UnsupportedDegreeError("character: degree " + std::to_string(l) +
            " above cap " + std::to_string(degree_cap));
    return chebyshev_u(2 * l, std::cos(0.5 * rotation_angle(x)));
}

} // namespace so3fit
