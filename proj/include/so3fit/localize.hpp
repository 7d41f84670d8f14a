#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "so3fit/fit.hpp"
#include "so3fit/fourier.hpp"
#include "so3fit/kernels.hpp"
#include "so3fit/point_set.hpp"
#include "so3fit/quadrature.hpp"

namespace so3fit {

/// Indices of the centers within distance rho of alpha (ascending).
/// Throws DensityError when the ball is empty.
std::vector<int> local_centers(const PointSet& centers, const Rotation& alpha, double rho);

/// Radius rule rho*(L, h) = c L^2 h clamped to pi.  The constant c was
/// calibrated once on the reference configuration (500 quasi-uniform centers,
/// L = 4) as the smallest value in {1,2,4,8}/L^2 for which the local systems
/// stay full-rank at all probes, and is frozen here.
double ckc_radius(int precision, double fill_distance);

/// Calibrated constant c in rho*(L, h) = c L^2 h.
inline constexpr double kCkcRadiusConstant = 0.5;

/// Sparse local-reproduction weights a(., alpha) supported on Xi n B(alpha, rho).
struct SparseWeights {
    std::vector<int> indices;
    Eigen::VectorXd weights;

    double l1_norm() const { return weights.cwiseAbs().sum(); }
};

/**
 * Local polynomial-reproduction weights: the minimal-l2-norm solution of
 * B a = D_alpha, where the rows of B run over a real basis of Pi_L evaluated
 * at the local centers.  Solved through an orthogonal factorization of B^*
 * with relative rank cutoff 1e-10; rank deficiency raises DensityError
 * recommending a larger radius.
 *
 * One-shot queries can use the free coefficient_vector(); batch evaluation
 * should construct the kernel once (it precomputes the basis at all centers).
 */
class CoefficientKernel {
public:
    CoefficientKernel(PointSet centers, int precision, double rho);

    const PointSet& centers() const { return centers_; }
    int precision() const { return precision_; }
    double radius() const { return rho_; }

    /// Reusable factorization of the local system, valid while the local
    /// center set stays the same.  One instance per thread; never shared.
    struct SolveCache {
        std::vector<int> indices;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr;
        bool valid = false;
    };

    SparseWeights weights(const Rotation& alpha) const;
    SparseWeights weights(const Rotation& alpha, SolveCache& cache) const;

    /// Real row basis of Pi_L evaluated at alpha (the right-hand side D_alpha).
    Eigen::VectorXd real_basis_at(const Rotation& alpha) const;

private:
    PointSet centers_;
    int precision_;
    double rho_;
    Eigen::MatrixXd basis_at_centers_; // dim(Pi_L) x |Xi|, real row basis
};

/// Minimal-norm local reproduction weights at a single alpha.
SparseWeights coefficient_vector(const PointSet& centers, const Rotation& alpha, int precision,
    double rho);

/// Worst-case report of the three coefficient kernel conditions measured at
/// Haar-random probes.
struct CkcReport {
    int probe_count = 0;
    std::uint64_t seed = 0;
    double max_precision_residual = 0;  // CKC2
    double max_support_violation = 0;   // CKC1, radians beyond rho
    double stability_constant = 0;      // CKC3: max sum |a|
    int density_failures = 0;           // probes where the local solve failed
    std::vector<int> local_counts;      // per-probe |Xi n B(alpha, rho)|
};

CkcReport verify_ckc(const CoefficientKernel& ck, int probe_count, std::uint64_t seed);

/// Pointwise replacement error
///   e(x, alpha) = |k_m(x, alpha) - sum_xi a(xi, alpha) k_m(x, xi)|.
double error_kernel_eval(const KernelOrder& order, const CoefficientKernel& ck,
    const Rotation& x, const Rotation& alpha);

/// Diagnostics accumulated while building the approximant.
struct BuildStats {
    double alpha_l1 = 0;        // |A|_1
    double weights_l1_max = 0;  // max over quadrature nodes of sum |a|
    double lmf_l1 = 0;          // |L_m f|_1 estimated on the same rule
};

/**
 * The approximation operator: a kernel-only model with coefficients
 *   A_xi = Int (L_m f)(alpha) a(xi, alpha) dmu(alpha)
 * discretized on the given rule.  f must be band-limited so L_m f is computed
 * exactly by apply_lm.  The rule should be dense enough that doubling its node
 * count changes |A|_1 by less than 1%.
 */
SplineModel build_approximant(const FourierCoefficients& f_coeffs, const PointSet& centers,
    const KernelOrder& order, int precision, double rho, const QuadratureRule& rule,
    BuildStats* stats = nullptr);

struct ConvergenceRow {
    int size;
    double h;
    double rho;
    double sup_error;
    double l2_error;
};

/// Rows sorted by decreasing h plus fitted order exponents (least squares on
/// log error against log rho, the rate variable of the error bound).
struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double sup_order = 0;
    double l2_order = 0;
};

/**
 * Per-level errors of build_approximant against the synthesized f, measured
 * on `probe_count` seeded Haar probes (sup) and on the rule nodes
 * (quadrature L2).  Radii follow ckc_radius(precision, h) per level.  When
 * `stats` is given it receives one BuildStats entry per level, in row order.
 */
ConvergenceTable convergence_study(const KernelOrder& order, int precision,
    const FourierCoefficients& f_coeffs, const std::vector<PointSet>& levels,
    const QuadratureRule& rule, int probe_count, std::uint64_t seed,
    std::vector<BuildStats>* stats = nullptr);

} // namespace so3fit
