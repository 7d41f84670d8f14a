#include "so3fit/kernels.hpp"

#include <cmath>
#include <vector>

#include "so3fit/errors.hpp"

namespace so3fit {

KernelOrder::KernelOrder(int m) : m_(m)
{
    if(m < 2)
        throw InvalidArgumentError("KernelOrder: m must be at least 2");
}

CpdData cpd_data(const KernelOrder& order)
{
    return {order.cpd_order(), (order.m() - 1) % 2 == 0 ? 1 : -1};
}

double kernel_eval_distance(const KernelOrder& order, double dist)
{
    return std::pow(std::sin(0.5 * dist), 2 * order.m() - 3);
}

double kernel_eval(const KernelOrder& order, const Rotation& x, const Rotation& a)
{
    return kernel_eval_distance(order, distance(x, a));
}

double kernel_eval_cos_half(const KernelOrder& order, double c)
{
    const double s2 = std::max(0.0, 1.0 - c * c);
    return std::pow(s2, 0.5 * (2 * order.m() - 3));
}

double kernel_cheb_coeff(const KernelOrder& order, int l)
{
    if(l < 0)
        throw InvalidArgumentError("kernel_cheb_coeff: degree must be nonnegative");
    const int m = order.m();
    // (2/pi) (2m-2)!/(-4)^{m-1} as a running product, interleaved with the
    // reciprocal factors so intermediate values stay moderate
    double value = 2.0 / M_PI;
    for(int j = 1; j <= m - 1; ++j) {
        value *= (2.0 * j - 1.0) * (2.0 * j) / (-4.0);
        value /= (l + j + 0.5) * (l - j + 0.5);
    }
    value /= l + 0.5;
    return value;
}

ChebSeries kernel_cheb_series(const KernelOrder& order, int N)
{
    ChebSeries series{order.m(), {}};
    series.coeffs.reserve(N + 1);
    for(int l = 0; l <= N; ++l)
        series.coeffs.push_back(kernel_cheb_coeff(order, l));
    return series;
}

double kernel_series_eval_distance(const KernelOrder& order, double dist, int N)
{
    if(N < 0)
        throw InvalidArgumentError("kernel_series_eval: truncation must be nonnegative");
    const double t = std::cos(0.5 * dist);
    // one pass of the U recurrence up to degree 2N, accumulating even terms
    double acc = kernel_cheb_coeff(order, 0);
    double u0 = 1.0, u1 = 2.0 * t;
    for(int deg = 2; deg <= 2 * N; ++deg) {
        const double u2 = 2.0 * t * u1 - u0;
        u0 = u1;
        u1 = u2;
        if(deg % 2 == 0)
            acc += kernel_cheb_coeff(order, deg / 2) * u2;
    }
    return acc;
}

double kernel_series_eval(const KernelOrder& order, const Rotation& x, const Rotation& a, int N)
{
    return kernel_series_eval_distance(order, distance(x, a), N);
}

double lm_symbol(const KernelOrder& order, int l)
{
    if(l < 0)
        throw InvalidArgumentError("lm_symbol: degree must be nonnegative");
    const int m = order.m();
    const double nu = laplace_beltrami_eigenvalue(l);
    double value = M_PI * (nu - order.root(0));
    for(int j = 1; j <= m - 1; ++j)
        value *= (nu - order.root(j)) * (-4.0) / ((2.0 * j - 1.0) * (2.0 * j));
    return value;
}

FourierCoefficients apply_lm(const KernelOrder& order, const FourierCoefficients& coeffs)
{
    FourierCoefficients out = coeffs;
    for(int l = 0; l <= coeffs.band(); ++l) {
        const double p = lm_symbol(order, l);
        for(int i = band_offset(l); i < band_offset(l + 1); ++i)
            out.table()[i] *= p;
    }
    return out;
}

} // namespace so3fit
