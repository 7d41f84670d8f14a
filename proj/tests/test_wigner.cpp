#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "so3fit/errors.hpp"
#include "so3fit/fourier.hpp"
#include "so3fit/point_set.hpp"
#include "so3fit/quadrature.hpp"
#include "so3fit/wigner.hpp"

using namespace so3fit;

TEST_SUITE_BEGIN("wigner");

TEST_CASE("chebyshev recurrence")
{
    CHECK(chebyshev_u(2, 1.0) == doctest::Approx(3.0));
    CHECK(chebyshev_u(2, 0.0) == doctest::Approx(-1.0));
    CHECK(chebyshev_u(4, std::cos(M_PI / 4)) == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(chebyshev_u(0, 0.3) == 1.0);
    // closed form sin((n+1)t)/sin(t)
    for(int n : {1, 3, 7, 12}) {
        const double t = 0.7;
        CHECK(chebyshev_u(n, std::cos(t)) ==
            doctest::Approx(std::sin((n + 1) * t) / std::sin(t)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(chebyshev_u(3, 1.1), InvalidArgumentError);
    CHECK_NOTHROW(chebyshev_u(3, 1.0 + 5e-13));
}

TEST_CASE("wigner matrices at special arguments")
{
    HaarSampler sampler(31);
    const Rotation x = sampler.sample();
    CHECK(wigner_d_matrix(0, x)(0, 0) == std::complex<double>(1.0, 0.0));

    for(int l : {1, 2, 5}) {
        const Eigen::MatrixXcd D = wigner_d_matrix(l, Rotation::identity());
        CHECK((D - Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff()
            < 1e-13);
    }

    CHECK_THROWS_AS(wigner_d_matrix(33, x), UnsupportedDegreeError);
}

TEST_CASE("unitarity")
{
    HaarSampler sampler(32);
    for(int i = 0; i < 20; ++i) {
        const Rotation x = sampler.sample();
        const Eigen::MatrixXcd D = wigner_d_matrix(3, x);
        CHECK((D * D.adjoint() - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff()
            <= 1e-9);
        CHECK((wigner_d_matrix(3, x.inverse()) - D.adjoint()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("homomorphism")
{
    HaarSampler sampler(33);
    for(int i = 0; i < 20; ++i) {
        const Rotation x = sampler.sample(), y = sampler.sample();
        for(int l : {1, 2, 4}) {
            const Eigen::MatrixXcd lhs = wigner_d_matrix(l, x * y);
            const Eigen::MatrixXcd rhs = wigner_d_matrix(l, x) * wigner_d_matrix(l, y);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("characters")
{
    for(int l : {0, 1, 2, 6}) {
        CHECK(character(l, Rotation::identity()) == doctest::Approx(2.0 * l + 1.0));
    }
    CHECK(character(1, rotation_z(M_PI)) == doctest::Approx(-1.0));

    HaarSampler sampler(34);
    for(int i = 0; i < 20; ++i) {
        const Rotation x = sampler.sample();
        for(int l = 0; l <= 8; ++l) {
            const std::complex<double> tr = wigner_d_matrix(l, x).trace();
            CHECK(std::abs(tr.imag()) <= 1e-9);
            CHECK(std::abs(character(l, x) - tr.real()) <= 1e-9);
        }
    }
}

TEST_CASE("addition formula")
{
    HaarSampler sampler(35);
    for(int i = 0; i < 10; ++i) {
        const Rotation x = sampler.sample(), alpha = sampler.sample();
        const double t = std::cos(0.5 * rotation_angle(alpha.inverse() * x));
        for(int l = 0; l <= 8; ++l) {
            const Eigen::MatrixXcd Dx = wigner_d_matrix(l, x);
            const Eigen::MatrixXcd Da = wigner_d_matrix(l, alpha);
            const std::complex<double> sum = (Dx.array() * Da.conjugate().array()).sum();
            CHECK(std::abs(sum - chebyshev_u(2 * l, t)) <= 1e-9);
        }
    }
}

TEST_CASE("orthogonality of the scaled basis")
{
    const int band = 3;
    const QuadratureRule rule = haar_quadrature(2 * band);
    const int dim = polynomial_dimension(band);
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dim, dim);
    WignerEvaluator eval(band);
    Eigen::VectorXcd row(dim);
    for(const QuadratureNode& node : rule.nodes()) {
        eval.evaluate(node.rotation);
        int r = 0;
        for(int l = 0; l <= band; ++l) {
            const double s = std::sqrt(2.0 * l + 1.0);
            for(int k = -l; k <= l; ++k)
                for(int m = -l; m <= l; ++m)
                    row[r++] = s * eval.coef(l, k, m);
        }
        gram += node.weight * row * row.adjoint();
    }
    CHECK((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("geodesic restriction is a trigonometric polynomial of matching degree")
{
    const int L = 5;
    HaarSampler sampler(36);
    FourierCoefficients coeffs(L);
    for(auto& c : coeffs.table())
        c = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};

    const Rotation x0 = sampler.sample();
    const Eigen::Vector3d eta = Eigen::Vector3d(sampler.uniform() - 0.5,
        sampler.uniform() - 0.5, sampler.uniform() - 0.5).normalized();

    const int N = 64;
    std::vector<std::complex<double>> samples(N);
    for(int j = 0; j < N; ++j) {
        const double t = 2.0 * M_PI * j / N;
        const Eigen::Quaterniond q(std::cos(0.5 * t), std::sin(0.5 * t) * eta.x(),
            std::sin(0.5 * t) * eta.y(), std::sin(0.5 * t) * eta.z());
        samples[j] = fourier_synthesize(coeffs, x0 * Rotation(q));
    }

    double total = 0, high = 0;
    for(int freq = 0; freq < N; ++freq) {
        std::complex<double> c{0, 0};
        for(int j = 0; j < N; ++j)
            c += samples[j] * std::polar(1.0, -2.0 * M_PI * freq * j / N);
        const int f = freq <= N / 2 ? freq : freq - N;
        const double e = std::norm(c);
        total += e;
        if(std::abs(f) > L)
            high += e;
    }
    CHECK(high <= 1e-8 * total);
}

TEST_SUITE_END();
