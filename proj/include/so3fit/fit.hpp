#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "so3fit/kernels.hpp"
#include "so3fit/point_set.hpp"
#include "so3fit/quadrature.hpp"

namespace so3fit {

/// Enumeration of the polynomial block rows: l ascending, then iota, then nu
/// ascending, for l = 0..l0.  This order is the serialization contract.
std::vector<WignerIndex> polynomial_basis_indices(int l0);

/**
 * Collocation data for a center set: the real symmetric kernel matrix
 * A_ij = (1 - cos^2(dist/2))^{(2m-3)/2} assembled from the Euler-angle closed
 * form, and the complex P x |Xi| Wigner evaluation matrix B whose rows follow
 * polynomial_basis_indices(l0).
 */
struct SaddleSystem {
    Eigen::MatrixXd A;
    Eigen::MatrixXcd B;
    KernelOrder order;
    PointSet centers;
};

/// Assemble A and B and verify that the centers are unisolvent for Pi_{l0}
/// (rank(B) = P); otherwise throws UnisolvencyError naming the deficient
/// degree.
SaddleSystem assemble_system(const PointSet& centers, const KernelOrder& order);

/**
 * Fitted approximant
 *   s(x) = sum_xi alpha_xi k_m(x, xi) + sum_{l<=l0} sum_{iota,nu} beta^l D^l(x).
 * Models produced by the fitting operations satisfy the moment conditions
 * B alpha = 0 to within 1e-8 |alpha|.
 */
struct SplineModel {
    KernelOrder order;
    std::vector<Rotation> centers;
    Eigen::VectorXcd alpha;
    Eigen::VectorXcd beta; // ordered by polynomial_basis_indices(order.cpd_order())
};

/// Interpolate values y given at the centers by solving the saddle system with
/// a pivoted dense factorization.  Throws ConditioningError when the condition
/// estimate exceeds 1e14.
SplineModel interpolate(const PointSet& centers, const Eigen::VectorXcd& y,
    const KernelOrder& order);

/// Smoothing fit: same system with A + lambda*Id in the upper-left block.
SplineModel tikhonov_fit(const PointSet& centers, const Eigen::VectorXcd& y, double lambda,
    const KernelOrder& order);

/// Orthogonal projection of f onto the model space S_Xi in the L2 inner
/// product induced by the rule.  The basis used is {sum_xi Z_i k_m(., xi)}
/// (Z an orthonormal null-space basis of B) together with the Wigner
/// functions of degree <= l0.
SplineModel least_squares_fit(const PointSet& centers,
    const std::function<std::complex<double>(const Rotation&)>& f, const KernelOrder& order,
    const QuadratureRule& rule);

/// Discrete least squares: projection in the inner product
/// <u, v> = (1/S) sum_i u(site_i) conj(v(site_i)) given samples at the sites.
SplineModel least_squares_fit_samples(const PointSet& centers,
    const std::vector<Rotation>& sites, const Eigen::VectorXcd& values,
    const KernelOrder& order);

/// Pointwise evaluation of the model.
std::complex<double> evaluate_model(const SplineModel& model, const Rotation& x);

/// Native-space seminorm truncated at the given band:
///   sum_{l0 < l <= band} sum_{iota,nu} |s^l_{iota,nu}|^2 / |k~_m(l)|,
/// computed by Fourier analysis of the evaluated model, with a decay-based
/// estimate of the discarded tail.
struct SeminormResult {
    double value;
    double tail_estimate;
};
SeminormResult native_seminorm(const SplineModel& model, int band);

} // namespace so3fit
