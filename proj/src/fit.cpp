#include "so3fit/fit.hpp"

#include <cmath>
#include <string>

#include "so3fit/errors.hpp"
#include "so3fit/fourier.hpp"

namespace so3fit {

std::vector<WignerIndex> polynomial_basis_indices(int l0)
{
    std::vector<WignerIndex> idx;
    idx.reserve(polynomial_dimension(l0));
    for(int l = 0; l <= l0; ++l)
        for(int k = -l; k <= l; ++k)
            for(int m = -l; m <= l; ++m)
                idx.push_back({l, k, m});
    return idx;
}

namespace {

Eigen::MatrixXcd wigner_block_matrix(const std::vector<Rotation>& points, int l0)
{
    const int P = polynomial_dimension(l0);
    Eigen::MatrixXcd B(P, points.size());
    WignerEvaluator eval(l0);
    const auto idx = polynomial_basis_indices(l0);
    for(std::size_t j = 0; j < points.size(); ++j) {
        eval.evaluate(points[j]);
        for(int r = 0; r < P; ++r)
            B(r, j) = eval.coef(idx[r].l, idx[r].k, idx[r].m);
    }
    return B;
}

/// Smallest degree whose cumulative row block is rank-deficient.
int deficient_degree(const Eigen::MatrixXcd& B, int l0)
{
    for(int l = 0; l <= l0; ++l) {
        const int rows = polynomial_dimension(l);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B.topRows(rows).transpose());
        if(qr.rank() < rows)
            return l;
    }
    return l0;
}

} // namespace

SaddleSystem assemble_system(const PointSet& centers, const KernelOrder& order)
{
    const int n = static_cast<int>(centers.size());
    const int l0 = order.cpd_order();
    const int P = polynomial_dimension(l0);
    if(n < P)
        throw UnisolvencyError("assemble_system: " + std::to_string(n) +
            " centers cannot be unisolvent for dimension " + std::to_string(P));

    std::vector<EulerAngles> euler(n);
    for(int i = 0; i < n; ++i)
        euler[i] = to_euler(centers[i]);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    for(int i = 0; i < n; ++i) {
        for(int j = i + 1; j < n; ++j) {
            const double v = kernel_eval_cos_half(order,
                cos_half_distance_euler(euler[i], euler[j]));
            A(i, j) = v;
            A(j, i) = v;
        }
    }

    Eigen::MatrixXcd B = wigner_block_matrix(centers.points(), l0);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(B.transpose());
    if(qr.rank() < P) {
        throw UnisolvencyError("assemble_system: centers not unisolvent; rank deficiency "
            "first appears at degree " + std::to_string(deficient_degree(B, l0)));
    }
    return {std::move(A), std::move(B), order, centers};
}

namespace {

SplineModel solve_saddle(const SaddleSystem& sys, const Eigen::VectorXcd& y, double lambda)
{
    const int n = static_cast<int>(sys.centers.size());
    const int P = static_cast<int>(sys.B.rows());
    if(y.size() != n)
        throw InvalidArgumentError("saddle solve: value count does not match center count");

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n + P, n + P);
    M.topLeftCorner(n, n) = sys.A.cast<std::complex<double>>();
    M.topLeftCorner(n, n).diagonal().array() += lambda;
    M.topRightCorner(n, P) = sys.B.transpose();
    M.bottomLeftCorner(P, n) = sys.B;

    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + P);
    rhs.head(n) = y;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const double rcond = lu.rcond();
    if(!(rcond > 1e-14))
        throw ConditioningError("saddle solve: condition estimate " +
            std::to_string(rcond > 0 ? 1.0 / rcond : std::nan("")) + " exceeds 1e14");

    Eigen::VectorXcd sol = lu.solve(rhs);
    // one step of iterative refinement keeps the residual near roundoff
    sol += lu.solve(rhs - M * sol);

    const double resid = (M * sol - rhs).norm();
    if(resid > 1e-10 * std::max(1.0, rhs.norm()))
        throw ConditioningError("saddle solve: residual " + std::to_string(resid) +
            " above 1e-10 * |rhs|");

    SplineModel model{sys.order, sys.centers.points(), sol.head(n), sol.tail(P)};
    return model;
}

} // namespace

SplineModel interpolate(const PointSet& centers, const Eigen::VectorXcd& y,
    const KernelOrder& order)
{
    return solve_saddle(assemble_system(centers, order), y, 0.0);
}

SplineModel tikhonov_fit(const PointSet& centers, const Eigen::VectorXcd& y, double lambda,
    const KernelOrder& order)
{
    if(!(lambda > 0))
        throw InvalidArgumentError("tikhonov_fit: lambda must be positive");
    return solve_saddle(assemble_system(centers, order), y, lambda);
}

namespace {

/// Shared projector core: least squares against samples (sites, weights,
/// values) of the target in the discrete inner product they induce.
SplineModel project_discrete(const PointSet& centers, const KernelOrder& order,
    const std::vector<Rotation>& sites, const Eigen::VectorXd& site_weights,
    const Eigen::VectorXcd& values)
{
    const SaddleSystem sys = assemble_system(centers, order);
    const int n = static_cast<int>(centers.size());
    const int P = static_cast<int>(sys.B.rows());
    const int S = static_cast<int>(sites.size());
    if(S < n)
        throw InvalidArgumentError("least squares: need at least as many samples as centers");

    // orthonormal basis Z of null(B) from the full Q factor of B^H
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sys.B.adjoint());
    Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd Z = Q.rightCols(n - P);

    // basis values at the sites: V = [K Z | polys]
    Eigen::MatrixXcd V(S, n);
    WignerEvaluator eval(order.cpd_order());
    const auto idx = polynomial_basis_indices(order.cpd_order());
    Eigen::VectorXcd krow(n);
    for(int i = 0; i < S; ++i) {
        for(int j = 0; j < n; ++j)
            krow[j] = kernel_eval(order, sites[i], centers[j]);
        V.row(i).head(n - P) = krow.transpose() * Z;
        eval.evaluate(sites[i]);
        for(int r = 0; r < P; ++r)
            V(i, n - P + r) = eval.coef(idx[r].l, idx[r].k, idx[r].m);
    }

    // column equilibration before forming the Gram matrix
    Eigen::VectorXcd scale(n);
    for(int j = 0; j < n; ++j) {
        double s = std::sqrt(V.col(j).cwiseAbs2().dot(site_weights));
        scale[j] = s > 0 ? 1.0 / s : 1.0;
    }
    Eigen::MatrixXcd Vs = V * scale.asDiagonal();
    Eigen::MatrixXcd Vw = site_weights.cast<std::complex<double>>().asDiagonal() * Vs;

    Eigen::MatrixXcd G = Vs.adjoint() * Vw;
    Eigen::VectorXcd rhs = Vw.adjoint() * values;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(G);
    const double rcond = lu.rcond();
    if(!(rcond > 1e-14))
        throw ConditioningError("least squares: Gram condition estimate exceeds 1e14");
    Eigen::VectorXcd a = lu.solve(rhs);
    a += lu.solve(rhs - G * a);
    a = scale.asDiagonal() * a;

    SplineModel model{order, centers.points(), Z * a.head(n - P), a.tail(P)};
    return model;
}

} // namespace

SplineModel least_squares_fit(const PointSet& centers,
    const std::function<std::complex<double>(const Rotation&)>& f, const KernelOrder& order,
    const QuadratureRule& rule)
{
    const int S = static_cast<int>(rule.size());
    std::vector<Rotation> sites;
    sites.reserve(S);
    Eigen::VectorXd w(S);
    Eigen::VectorXcd values(S);
    int i = 0;
    for(const QuadratureNode& node : rule.nodes()) {
        sites.push_back(node.rotation);
        w[i] = node.weight;
        values[i] = f(node.rotation);
        ++i;
    }
    return project_discrete(centers, order, sites, w, values);
}

SplineModel least_squares_fit_samples(const PointSet& centers,
    const std::vector<Rotation>& sites, const Eigen::VectorXcd& values,
    const KernelOrder& order)
{
    if(static_cast<int>(sites.size()) != values.size())
        throw InvalidArgumentError("least squares: site and value counts differ");
    Eigen::VectorXd w = Eigen::VectorXd::Constant(sites.size(), 1.0 / sites.size());
    return project_discrete(centers, order, sites, w, values);
}

std::complex<double> evaluate_model(const SplineModel& model, const Rotation& x)
{
    std::complex<double> acc{0.0, 0.0};
    for(std::size_t j = 0; j < model.centers.size(); ++j)
        acc += model.alpha[j] * kernel_eval(model.order, x, model.centers[j]);
    const int l0 = model.order.cpd_order();
    WignerEvaluator eval(l0);
    eval.evaluate(x);
    const auto idx = polynomial_basis_indices(l0);
    for(std::size_t r = 0; r < idx.size(); ++r)
        acc += model.beta[r] * eval.coef(idx[r].l, idx[r].k, idx[r].m);
    return acc;
}

SeminormResult native_seminorm(const SplineModel& model, int band)
{
    const int l0 = model.order.cpd_order();
    if(band < l0)
        throw InvalidArgumentError("native_seminorm: band must be at least l0");
    const QuadratureRule rule = haar_quadrature(2 * band);
    const FourierCoefficients coeffs = fourier_analyze(
        [&](const Rotation& x) { return evaluate_model(model, x); }, band, rule);

    double value = 0;
    double last_band = 0;
    for(int l = l0 + 1; l <= band; ++l) {
        last_band = coeffs.band_energy(l) / std::abs(kernel_cheb_coeff(model.order, l));
        value += last_band;
    }
    // continuation of the ~ l^{-(2m-1)} band decay of kernel translates
    const double tail = band > l0 ? last_band * band / (2.0 * model.order.m() - 2.0) : 0.0;
    return {value, tail};
}

} // namespace so3fit
