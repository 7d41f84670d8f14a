#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "so3fit/quadrature.hpp"
#include "so3fit/rotation.hpp"
#include "so3fit/wigner.hpp"

namespace so3fit {

/**
 * Banded table of SO(3) Fourier coefficients f^l_{k,m} for 0 <= l <= band,
 * |k|, |m| <= l, in the symmetric sqrt(2l+1) normalization:
 *   f^l_{k,m} = sqrt(2l+1) Int f(x) conj(D^l_{k,m}(x)) dmu(x),
 *   f        = sum_l sum_{k,m} sqrt(2l+1) f^l_{k,m} D^l_{k,m}.
 */
class FourierCoefficients {
public:
    FourierCoefficients() = default;
    explicit FourierCoefficients(int band)
        : band_(band), c_(band_offset(band + 1), {0.0, 0.0}) {}

    int band() const { return band_; }

    std::complex<double>& ref(int l, int k, int m) { return c_[band_index(l, k, m)]; }
    std::complex<double> at(int l, int k, int m) const { return c_[band_index(l, k, m)]; }

    const std::vector<std::complex<double>>& table() const { return c_; }
    std::vector<std::complex<double>>& table() { return c_; }

    /// Set when the analysis rule had exactness below 2*band.
    bool exactness_warning() const { return exactness_warning_; }
    void set_exactness_warning(bool w) { exactness_warning_ = w; }

    /// Sum of |f^l_{k,m}|^2 over one band (Parseval contribution).
    double band_energy(int l) const;

private:
    int band_ = 0;
    std::vector<std::complex<double>> c_;
    bool exactness_warning_ = false;
};

/// Discrete analysis with the given rule; exact (to roundoff) for inputs
/// band-limited to `band` when the rule exactness is at least 2*band,
/// otherwise the warning flag is set on the result.
FourierCoefficients fourier_analyze(const std::function<std::complex<double>(const Rotation&)>& f,
    int band, const QuadratureRule& rule);

/// Pointwise synthesis of the band-limited function.
std::complex<double> fourier_synthesize(const FourierCoefficients& coeffs, const Rotation& x);

/// Coefficients of the character c_l (all ones on the diagonal of band l,
/// scaled to the sqrt(2l+1) convention).
FourierCoefficients character_coefficients(int l);

} // namespace so3fit
