#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "so3fit/rotation.hpp"

namespace so3fit {

/// Index (l, k, m) of a Wigner-D function with |k|, |m| <= l.
struct WignerIndex {
    int l = 0;
    int k = 0;
    int m = 0;
};

/// Default cap on the Wigner degree; evaluation above it throws.
inline constexpr int kDefaultDegreeCap = 32;

/// Chebyshev polynomial of the second kind U_n(t) by the three-term
/// recurrence.  Throws InvalidArgumentError for |t| > 1 + 1e-12.
double chebyshev_u(int n, double t);

/// Number of (k, m) pairs for all degrees 0..l0, i.e. sum of (2l+1)^2.
int polynomial_dimension(int l0);

/// Flat offset of the degree-l block inside a banded coefficient table.
inline int band_offset(int l) { return l * (2 * l - 1) * (2 * l + 1) / 3; }

/// Flat index of (l, k, m) inside a banded table.
inline int band_index(int l, int k, int m)
{
    return band_offset(l) + (k + l) * (2 * l + 1) + (m + l);
}

/**
 * Evaluates all Wigner-D functions D^l_{k,m} with l <= band at one rotation.
 * Entries for fixed (k, m) and running l share a single Jacobi recurrence, so
 * filling the whole tower costs O(band^3).
 *
 * The convention matches D^l_{k,m}(phi1, theta, phi2) =
 * e^{-i k phi1} P^l_{k,m}(cos theta) e^{-i m phi2} in z-x-z Euler angles,
 * realized as i^{k-m} times the real z-y-z Wigner-d matrix; the degree-l block
 * is a unitary irreducible representation, so unitarity, the homomorphism
 * property and the addition formula hold by construction.
 */
class WignerEvaluator {
public:
    explicit WignerEvaluator(int band, int degree_cap = kDefaultDegreeCap);

    int band() const { return band_; }

    /// Recompute the table at x.
    void evaluate(const Rotation& x);
    void evaluate(const EulerAngles& e);

    std::complex<double> coef(int l, int k, int m) const
    {
        return table_[band_index(l, k, m)];
    }

    const std::vector<std::complex<double>>& table() const { return table_; }

private:
    int band_;
    std::vector<std::complex<double>> table_;
    std::vector<double> jacobi_; // recurrence scratch
};

/// The full (2l+1) x (2l+1) matrix D^l(x), rows indexed by k = -l..l and
/// columns by m = -l..l.  Throws UnsupportedDegreeError above the cap.
Eigen::MatrixXcd wigner_d_matrix(int l, const Rotation& x, int degree_cap = kDefaultDegreeCap);

/// Character c_l(x) = Tr D^l(x) = U_{2l}(cos(omega(x)/2)); real-valued.
double character(int l, const Rotation& x, int degree_cap = kDefaultDegreeCap);

/// Laplace-Beltrami eigenvalue of the degree-l eigenspace.
inline double laplace_beltrami_eigenvalue(int l) { return static_cast<double>(l) * (l + 1); }

} // namespace so3fit
