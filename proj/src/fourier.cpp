#include "so3fit/fourier.hpp"

#include <cmath>

#include "so3fit/errors.hpp"

namespace so3fit {

double FourierCoefficients::band_energy(int l) const
{
    double e = 0;
    for(int k = -l; k <= l; ++k)
        for(int m = -l; m <= l; ++m)
            e += std::norm(at(l, k, m));
    return e;
}

FourierCoefficients fourier_analyze(
    const std::function<std::complex<double>(const Rotation&)>& f, int band,
    const QuadratureRule& rule)
{
    FourierCoefficients coeffs(band);
    WignerEvaluator eval(band, std::max(band, kDefaultDegreeCap));
    std::vector<std::complex<double>>& c = coeffs.table();
    for(const QuadratureNode& node : rule.nodes()) {
        const std::complex<double> fw = node.weight * f(node.rotation);
        eval.evaluate(node.rotation);
        const std::vector<std::complex<double>>& d = eval.table();
        for(std::size_t i = 0; i < c.size(); ++i)
            c[i] += fw * std::conj(d[i]);
    }
    for(int l = 0; l <= band; ++l) {
        const double scale = std::sqrt(2.0 * l + 1.0);
        for(int i = band_offset(l); i < band_offset(l + 1); ++i)
            c[i] *= scale;
    }
    coeffs.set_exactness_warning(rule.exactness() < 2 * band);
    return coeffs;
}

std::complex<double> fourier_synthesize(const FourierCoefficients& coeffs, const Rotation& x)
{
    const int band = coeffs.band();
    WignerEvaluator eval(band, std::max(band, kDefaultDegreeCap));
    eval.evaluate(x);
    const std::vector<std::complex<double>>& d = eval.table();
    const std::vector<std::complex<double>>& c = coeffs.table();
    std::complex<double> acc{0.0, 0.0};
    for(int l = 0; l <= band; ++l) {
        std::complex<double> band_acc{0.0, 0.0};
        for(int i = band_offset(l); i < band_offset(l + 1); ++i)
            band_acc += c[i] * d[i];
        acc += std::sqrt(2.0 * l + 1.0) * band_acc;
    }
    return acc;
}

FourierCoefficients character_coefficients(int l)
{
    FourierCoefficients coeffs(l);
    const double v = 1.0 / std::sqrt(2.0 * l + 1.0);
    for(int k = -l; k <= l; ++k)
        coeffs.ref(l, k, k) = v;
    return coeffs;
}

} // namespace so3fit
