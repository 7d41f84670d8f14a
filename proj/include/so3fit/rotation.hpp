#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace so3fit {

/// Euler angles in the z-x-z convention: x = s_z[phi1] * s_x[theta] * s_z[phi2],
/// with phi1, phi2 in [0, 2*pi) and theta in [0, pi].
struct EulerAngles {
    double phi1 = 0.0;
    double theta = 0.0;
    double phi2 = 0.0;
};

/// Axis-angle form: rotation about a unit axis by an angle in [0, pi].
/// The pairs (r, pi) and (-r, pi) describe the same rotation.
struct AxisAngle {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    double angle = 0.0;
};

/**
 * An element of SO(3), stored internally as a unit quaternion with a canonical
 * sign (scalar part nonnegative).  The rotation matrix derived from the
 * quaternion satisfies R^T R = I and det R = 1 to within 1e-12; composition
 * and inversion re-normalize.
 */
class Rotation {
public:
    /// Identity rotation.
    Rotation() : q_(1.0, 0.0, 0.0, 0.0) {}

    /// From a quaternion; normalized and sign-canonicalized internally.
    explicit Rotation(const Eigen::Quaterniond& q) : q_(q) { canonicalize(); }

    /// From a rotation matrix (assumed orthogonal with determinant 1).
    explicit Rotation(const Eigen::Matrix3d& mat) : q_(mat) { canonicalize(); }

    static Rotation identity() { return Rotation(); }

    const Eigen::Quaterniond& quaternion() const { return q_; }
    Eigen::Matrix3d matrix() const { return q_.toRotationMatrix(); }

    Rotation inverse() const { return Rotation(q_.conjugate()); }

    Rotation operator*(const Rotation& other) const { return Rotation(q_ * other.q_); }

    bool operator==(const Rotation& other) const { return q_.coeffs() == other.q_.coeffs(); }

private:
    void canonicalize();

    Eigen::Quaterniond q_;
};

/// Rotation about the z-axis by t (the matrix s_z[t]).
Rotation rotation_z(double t);
/// Rotation about the x-axis by t (the matrix s_x[t]).
Rotation rotation_x(double t);
/// Rotation about the y-axis by t.
Rotation rotation_y(double t);

/// Build the rotation s_z[phi1] * s_x[theta] * s_z[phi2].  Out-of-range angles
/// are reduced to the declared ranges (no error).
Rotation from_euler(const EulerAngles& angles);

/**
 * Recover z-x-z Euler angles.  At the gimbal degeneracy (theta = 0 or pi,
 * detected when |sin theta| < 1e-12) the convention is phi2 = 0 with the full
 * twist folded into phi1; the returned triple always reconstructs the same
 * rotation.
 */
EulerAngles to_euler(const Rotation& x);

/// Rotation about a unit axis.  Throws InvalidArgumentError if the axis norm
/// deviates from 1 by more than 1e-9.
Rotation from_axis_angle(const AxisAngle& aa);

/// Axis-angle form with angle in [0, pi].  The identity reports axis (0,0,1);
/// for angle pi the representative with lexicographically positive axis is
/// returned.
AxisAngle to_axis_angle(const Rotation& x);

/// Rotation angle omega(x) in [0, pi]; equals arccos((Tr(x) - 1)/2) with the
/// argument clamped to [-1, 1], evaluated through the quaternion for accuracy
/// near 0 and pi.
double rotation_angle(const Rotation& x);

/// Bi-invariant metric dist(x, y) = omega(y^{-1} x) in [0, pi].
double distance(const Rotation& x, const Rotation& y);

/// The same metric from the Euler-angle closed form
///   cos(d/2) = |cos(dp1/2) cos(dp2/2) cos(dt/2) - sin(dp1/2) sin(dp2/2) cos((ti+tj)/2)|.
double distance_euler(const EulerAngles& a, const EulerAngles& b);

/// cos(dist/2) from the Euler-angle closed form; useful where the kernel needs
/// 1 - cos^2 without any inverse trigonometry.
double cos_half_distance_euler(const EulerAngles& a, const EulerAngles& b);

} // namespace so3fit
