#pragma once

#include <functional>
#include <vector>

#include "so3fit/rotation.hpp"

namespace so3fit {

struct QuadratureNode {
    Rotation rotation;
    double weight;
};

/// A positive quadrature rule for the normalized Haar measure, with a declared
/// polynomial exactness degree: every Wigner-D function of degree 1..n
/// integrates to zero and the constant to one.
class QuadratureRule {
public:
    QuadratureRule(std::vector<QuadratureNode> nodes, int exactness)
        : nodes_(std::move(nodes)), exactness_(exactness) {}

    const std::vector<QuadratureNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    int exactness() const { return exactness_; }

    /// Apply the rule to a scalar function.
    template <typename F>
    auto integrate(F&& f) const -> decltype(f(Rotation())) {
        decltype(f(Rotation())) acc{};
        for(const QuadratureNode& node : nodes_)
            acc += node.weight * f(node.rotation);
        return acc;
    }

private:
    std::vector<QuadratureNode> nodes_;
    int exactness_;
};

/**
 * Product rule for the Haar integral
 *   (1/8 pi^2) Int f(phi1, theta, phi2) sin(theta) dphi1 dtheta dphi2:
 * Gauss-Legendre with n+1 nodes in cos(theta) combined with 2n+2 uniform nodes
 * in each of phi1, phi2.  The exactness degree n is verified by tests, not
 * assumed.
 */
QuadratureRule haar_quadrature(int n);

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace so3fit
