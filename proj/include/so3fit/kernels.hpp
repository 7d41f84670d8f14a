#pragma once

#include <vector>

#include "so3fit/fourier.hpp"
#include "so3fit/rotation.hpp"

namespace so3fit {

/**
 * Order parameter of the surface-spline kernel
 *   k_m(x, a) = sin(dist(x, a)/2)^{2m-3},
 * with the derived half-integer exponent s = (2m-3)/2, the conditional
 * positive definiteness order l0 = m-2, and the operator roots r_j = j^2-1/4.
 */
class KernelOrder {
public:
    explicit KernelOrder(int m);

    int m() const { return m_; }
    /// s = (2m-3)/2, the order of the kernel's zero at coinciding arguments.
    double exponent_s() const { return 0.5 * (2 * m_ - 3); }
    /// Conditional positive definiteness order l0 = m-2.
    int cpd_order() const { return m_ - 2; }
    /// Root r_j = j^2 - 1/4 of the operator polynomial, j = 0..m-1.
    double root(int j) const { return static_cast<double>(j) * j - 0.25; }

private:
    int m_;
};

/// Orientation data for definiteness tests: the CPD order l0 = m-2 and the
/// sign sigma = (-1)^{m-1} of the coefficients k~_m(l) for l >= m-1.
struct CpdData {
    int order;
    int sign;
};
CpdData cpd_data(const KernelOrder& order);

/// k_m(x, a) = sin(dist(x, a)/2)^{2m-3}; symmetric, bi-invariant, in [0, 1].
double kernel_eval(const KernelOrder& order, const Rotation& x, const Rotation& a);

/// Kernel value as a function of the distance alone.
double kernel_eval_distance(const KernelOrder& order, double dist);

/// Kernel value from cos(dist/2): (1 - c^2)^{(2m-3)/2}.  Together with
/// cos_half_distance_euler this gives collocation entries without any inverse
/// trigonometry.
double kernel_eval_cos_half(const KernelOrder& order, double cos_half_dist);

/// Coefficient of the character expansion,
///   k~_m(l) = (2/pi) (2m-2)!/(-4)^{m-1} prod_{j=-(m-1)}^{m-1} [l+j+1/2]^{-1},
/// accumulated as a running product.
double kernel_cheb_coeff(const KernelOrder& order, int l);

/// Coefficient table k~_m(0..N).  The sign of coeffs[l] is (-1)^{m-1} for all
/// l >= m-1.
struct ChebSeries {
    int m;
    std::vector<double> coeffs;
};
ChebSeries kernel_cheb_series(const KernelOrder& order, int N);

/// Partial sum sum_{l<=N} k~_m(l) U_{2l}(cos(dist/2)) of the character
/// expansion; converges to kernel_eval as N grows for dist > 0.
double kernel_series_eval(const KernelOrder& order, const Rotation& x, const Rotation& a, int N);
double kernel_series_eval_distance(const KernelOrder& order, double dist, int N);

/// Symbol of the order-2m differential operator inverted by the kernel,
///   p_m(nu) = pi (-4)^{m-1}/(2m-2)! prod_{j=0}^{m-1} (nu - r_j),
/// evaluated at nu = l(l+1).  Satisfies k~_m(l) p_m(l(l+1)) = 2l+1.
double lm_symbol(const KernelOrder& order, int l);

/// Apply the operator spectrally: multiply each band l by p_m(l(l+1)).
FourierCoefficients apply_lm(const KernelOrder& order, const FourierCoefficients& coeffs);

} // namespace so3fit
