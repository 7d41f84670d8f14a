#include <doctest.h>

#include <cmath>
#include <complex>

#include "so3fit/errors.hpp"
#include "so3fit/fit.hpp"
#include "so3fit/fourier.hpp"
#include "so3fit/point_set.hpp"

using namespace so3fit;

TEST_SUITE_BEGIN("fit");

namespace {

Eigen::VectorXcd sample_function(const std::vector<Rotation>& pts,
    const std::function<std::complex<double>(const Rotation&)>& f)
{
    Eigen::VectorXcd y(pts.size());
    for(std::size_t i = 0; i < pts.size(); ++i)
        y[i] = f(pts[i]);
    return y;
}

PointSet haar_set(int n, std::uint64_t seed)
{
    return point_set_stats(sample_points(n, SampleMode::uniform, seed).points(), 50 * n);
}

} // namespace

TEST_CASE("assembly shapes and the single-point system")
{
    const KernelOrder m2(2);
    PointSet one(std::vector<Rotation>{Rotation::identity()});
    const SaddleSystem sys = assemble_system(one, m2);
    CHECK(sys.A.rows() == 1);
    CHECK(sys.A(0, 0) == 0.0);
    CHECK(sys.B.rows() == 1);
    CHECK(sys.B(0, 0) == std::complex<double>(1.0, 0.0));

    // m = 3: 1 + 9 = 10 polynomial rows
    const PointSet pts = haar_set(24, 51);
    const SaddleSystem sys3 = assemble_system(pts, KernelOrder(3));
    CHECK(sys3.B.rows() == 10);
    CHECK(polynomial_dimension(1) == 10);
}

TEST_CASE("kernel matrix: Euler closed form against the metric path")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(100, 52);
    const SaddleSystem sys = assemble_system(pts, m2);
    double worst = 0;
    for(int i = 0; i < 100; ++i) {
        for(int j = 0; j < 100; ++j) {
            const double metric = kernel_eval(m2, pts[i], pts[j]);
            worst = std::max(worst, std::abs(sys.A(i, j) - metric));
        }
    }
    CHECK(worst <= 1e-10);
    CHECK((sys.A - sys.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sys.A.diagonal().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero diagonal and moment conditions of interpolation")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(40, 53);
    const Eigen::VectorXcd y = sample_function(pts.points(),
        [](const Rotation& x) { return std::complex<double>(character(2, x), 0.0); });
    const SplineModel model = interpolate(pts, y, m2);

    // residual at centers
    double resid = 0;
    for(std::size_t i = 0; i < pts.size(); ++i)
        resid = std::max(resid, std::abs(evaluate_model(model, pts[i]) - y[i]));
    CHECK(resid <= 1e-8 * y.cwiseAbs().maxCoeff());

    // moment conditions B alpha = 0
    const SaddleSystem sys = assemble_system(pts, m2);
    CHECK((sys.B * model.alpha).norm() <= 1e-8 * model.alpha.norm());

    // real data gives real evaluations
    HaarSampler sampler(54);
    for(int i = 0; i < 50; ++i)
        CHECK(std::abs(evaluate_model(model, sampler.sample()).imag()) <=
            1e-8 * y.cwiseAbs().maxCoeff());
}

TEST_CASE("constant reproduction")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(30, 55);
    const std::complex<double> c{2.5, 0.0};
    const SplineModel model = interpolate(pts,
        Eigen::VectorXcd::Constant(pts.size(), c), m2);
    CHECK(model.alpha.cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(model.beta[0] - c) <= 1e-10);
    HaarSampler sampler(56);
    for(int i = 0; i < 20; ++i)
        CHECK(std::abs(evaluate_model(model, sampler.sample()) - c) <= 1e-10);
}

TEST_CASE("polynomial reproduction for m = 3")
{
    const KernelOrder m3(3);
    const PointSet pts = haar_set(60, 57);
    // random element of Pi_1
    HaarSampler sampler(58);
    FourierCoefficients p(1);
    for(auto& v : p.table())
        v = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};
    const auto pf = [&](const Rotation& x) { return fourier_synthesize(p, x); };
    const SplineModel model = interpolate(pts, sample_function(pts.points(), pf), m3);
    CHECK(model.alpha.cwiseAbs().maxCoeff() <= 1e-8);

    double pmax = 0, err = 0;
    for(int i = 0; i < 1000; ++i) {
        const Rotation x = sampler.sample();
        const std::complex<double> exact = pf(x);
        pmax = std::max(pmax, std::abs(exact));
        err = std::max(err, std::abs(evaluate_model(model, x) - exact));
    }
    CHECK(err <= 1e-7 * pmax);
}

TEST_CASE("interpolation is a projection")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(35, 59);
    HaarSampler sampler(60);
    Eigen::VectorXcd y(pts.size());
    for(Eigen::Index i = 0; i < y.size(); ++i)
        y[i] = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};
    const SplineModel first = interpolate(pts, y, m2);
    const SplineModel second = interpolate(pts,
        sample_function(pts.points(), [&](const Rotation& x) { return evaluate_model(first, x); }),
        m2);
    const double scale = first.alpha.norm() + first.beta.norm();
    CHECK((first.alpha - second.alpha).norm() <= 1e-8 * scale);
    CHECK((first.beta - second.beta).norm() <= 1e-8 * scale);
}

TEST_CASE("cpd orientation on random sets")
{
    for(int m : {2, 3}) {
        const KernelOrder order(m);
        const CpdData cpd = cpd_data(order);
        for(std::uint64_t seed = 1; seed <= 5; ++seed) {
            const PointSet pts = haar_set(40, 600 + seed);
            const SaddleSystem sys = assemble_system(pts, order);
            const int n = static_cast<int>(pts.size());
            const int P = static_cast<int>(sys.B.rows());
            // orthonormal null-space basis of B
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(sys.B.adjoint());
            Eigen::MatrixXcd Z = (qr.householderQ() *
                Eigen::MatrixXcd::Identity(n, n)).rightCols(n - P);
            Eigen::MatrixXcd form = Z.adjoint() * sys.A * Z;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
                0.5 * (form + form.adjoint()));
            CHECK(double(cpd.sign) * eig.eigenvalues().minCoeff() > 0.0);
        }
    }
}

TEST_CASE("tikhonov limits and ordering")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(40, 61);
    HaarSampler sampler(62);
    Eigen::VectorXcd y(pts.size());
    for(Eigen::Index i = 0; i < y.size(); ++i)
        y[i] = character(2, pts[static_cast<std::size_t>(i)]) +
            0.3 * (2.0 * sampler.uniform() - 1.0);

    const SplineModel interp = interpolate(pts, y, m2);
    const SplineModel tiny = tikhonov_fit(pts, y, 1e-12, m2);
    const double scale = interp.alpha.norm() + interp.beta.norm();
    CHECK((interp.alpha - tiny.alpha).norm() + (interp.beta - tiny.beta).norm() <=
        1e-6 * scale);

    // sigma-oriented seminorm comparison for noisy data
    const SplineModel smooth = tikhonov_fit(pts, y, 1e-3, m2);
    const double sigma = cpd_data(m2).sign;
    const SeminormResult s_tik = native_seminorm(smooth, 8);
    const SeminormResult s_int = native_seminorm(interp, 8);
    CHECK(sigma * s_tik.value <= sigma * s_int.value + 1e-9);

    // exactly polynomial data returns the polynomial for any lambda
    const Eigen::VectorXcd yc = Eigen::VectorXcd::Constant(pts.size(), 1.5);
    for(double lambda : {1e-6, 0.1, 10.0}) {
        const SplineModel poly = tikhonov_fit(pts, yc, lambda, m2);
        CHECK(poly.alpha.cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(std::abs(poly.beta[0] - 1.5) <= 1e-9);
    }

    CHECK_THROWS_AS(tikhonov_fit(pts, y, 0.0, m2), InvalidArgumentError);
}

TEST_CASE("least squares projection")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(25, 63);
    const QuadratureRule rule = haar_quadrature(8);

    // constants lie in the space
    const SplineModel cm = least_squares_fit(pts,
        [](const Rotation&) { return std::complex<double>(2.0, 0.0); }, m2, rule);
    CHECK(std::abs(cm.beta[0] - 2.0) <= 1e-8);
    CHECK(cm.alpha.cwiseAbs().maxCoeff() <= 1e-8);

    // idempotence: projecting an element of the space returns it
    HaarSampler sampler(64);
    Eigen::VectorXcd y(pts.size());
    for(Eigen::Index i = 0; i < y.size(); ++i)
        y[i] = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};
    const SplineModel inside = interpolate(pts, y, m2);
    const SplineModel proj = least_squares_fit(pts,
        [&](const Rotation& x) { return evaluate_model(inside, x); }, m2, rule);
    double l2 = 0;
    for(const QuadratureNode& node : rule.nodes())
        l2 += node.weight *
            std::norm(evaluate_model(proj, node.rotation) - evaluate_model(inside, node.rotation));
    CHECK(std::sqrt(l2) <= 1e-8);

    // best approximation beats the interpolant in the same inner product
    const auto target = [](const Rotation& x) {
        return std::complex<double>(character(3, x) + 0.2 * character(1, x), 0.0);
    };
    const SplineModel best = least_squares_fit(pts, target, m2, rule);
    const SplineModel interp = interpolate(pts, sample_function(pts.points(), target), m2);
    double e_best = 0, e_interp = 0;
    for(const QuadratureNode& node : rule.nodes()) {
        e_best += node.weight * std::norm(evaluate_model(best, node.rotation) -
            target(node.rotation));
        e_interp += node.weight * std::norm(evaluate_model(interp, node.rotation) -
            target(node.rotation));
    }
    CHECK(std::sqrt(e_best) <= std::sqrt(e_interp) + 1e-9);
}

TEST_CASE("model evaluation is linear in the coefficients")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(20, 65);
    HaarSampler sampler(66);
    Eigen::VectorXcd y1(pts.size()), y2(pts.size());
    for(Eigen::Index i = 0; i < y1.size(); ++i) {
        y1[i] = {sampler.uniform(), sampler.uniform()};
        y2[i] = {sampler.uniform(), sampler.uniform()};
    }
    const SplineModel m1 = interpolate(pts, y1, m2);
    const SplineModel m2model = interpolate(pts, y2, m2);
    SplineModel sum = m1;
    sum.alpha += m2model.alpha;
    sum.beta += m2model.beta;
    for(int i = 0; i < 20; ++i) {
        const Rotation x = sampler.sample();
        CHECK(std::abs(evaluate_model(sum, x) -
            (evaluate_model(m1, x) + evaluate_model(m2model, x))) <= 1e-12);
    }

    SplineModel zero = m1;
    zero.alpha.setZero();
    zero.beta.setZero();
    CHECK(evaluate_model(zero, sampler.sample()) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("native seminorm")
{
    const KernelOrder m2(2);
    const PointSet pts = haar_set(25, 67);

    // polynomials are the null space
    const SplineModel constant = interpolate(pts,
        Eigen::VectorXcd::Constant(pts.size(), 3.0), m2);
    CHECK(native_seminorm(constant, 6).value <= 1e-10);

    // absolute homogeneity of degree 2
    HaarSampler sampler(68);
    Eigen::VectorXcd y(pts.size());
    for(Eigen::Index i = 0; i < y.size(); ++i)
        y[i] = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};
    const SplineModel base = interpolate(pts, y, m2);
    SplineModel scaled = base;
    scaled.alpha *= 2.0;
    scaled.beta *= 2.0;
    const double v1 = native_seminorm(base, 6).value;
    const double v4 = native_seminorm(scaled, 6).value;
    CHECK(v4 == doctest::Approx(4.0 * v1).epsilon(1e-10));
}

TEST_CASE("unisolvency and conditioning failures")
{
    // m = 3 needs at least 10 centers
    const PointSet tiny = haar_set(4, 69);
    CHECK_THROWS_AS(assemble_system(tiny, KernelOrder(3)), UnisolvencyError);

    // nearly coincident centers drive the condition estimate over the limit
    std::vector<Rotation> close;
    HaarSampler sampler(70);
    const Rotation base = sampler.sample();
    for(int i = 0; i < 12; ++i)
        close.push_back(base * from_axis_angle({Eigen::Vector3d::UnitZ(), 1e-13 * (i + 1)}));
    CHECK_THROWS_AS(
        interpolate(PointSet(close), Eigen::VectorXcd::Ones(12), KernelOrder(2)),
        ConditioningError);
}

TEST_SUITE_END();
