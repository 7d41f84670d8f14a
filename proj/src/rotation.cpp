#include "so3fit/rotation.hpp"

#include <cmath>

#include "so3fit/errors.hpp"

namespace so3fit {

namespace {

const double TWO_PI = 2.0 * M_PI;

/// Reduce an angle to [0, 2*pi).
double wrap_angle(double t)
{
    double r = std::fmod(t, TWO_PI);
    if(r < 0)
        r += TWO_PI;
    // fmod can return 2*pi exactly after the correction when t is a tiny negative number
    if(r >= TWO_PI)
        r = 0;
    return r;
}

double clamp_unit(double t)
{
    return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t);
}

} // namespace

void Rotation::canonicalize()
{
    q_.normalize();
    // fix the quaternion double cover: scalar part nonnegative, and at w == 0
    // the first nonzero vector component positive
    const double w = q_.w();
    bool flip = w < 0;
    if(w == 0) {
        const Eigen::Vector3d v = q_.vec();
        for(int i = 0; i < 3; ++i) {
            if(v[i] != 0) {
                flip = v[i] < 0;
                break;
            }
        }
    }
    if(flip)
        q_.coeffs() = -q_.coeffs();
}

Rotation rotation_z(double t)
{
    return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(t, Eigen::Vector3d::UnitZ())));
}

Rotation rotation_x(double t)
{
    return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(t, Eigen::Vector3d::UnitX())));
}

Rotation rotation_y(double t)
{
    return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(t, Eigen::Vector3d::UnitY())));
}

Rotation from_euler(const EulerAngles& angles)
{
    double phi1 = angles.phi1, theta = angles.theta, phi2 = angles.phi2;
    theta = wrap_angle(theta);
    if(theta > M_PI) {
        // s_x[2*pi - t] = s_z[pi] s_x[t] s_z[pi]
        theta = TWO_PI - theta;
        phi1 += M_PI;
        phi2 += M_PI;
    }
    phi1 = wrap_angle(phi1);
    phi2 = wrap_angle(phi2);
    return rotation_z(phi1) * rotation_x(theta) * rotation_z(phi2);
}

EulerAngles to_euler(const Rotation& x)
{
    const Eigen::Matrix3d R = x.matrix();
    // R(2,2) = cos(theta);  R(0,2) = sin(phi1) sin(theta), R(1,2) = -cos(phi1) sin(theta);
    // R(2,0) = sin(theta) sin(phi2), R(2,1) = sin(theta) cos(phi2)
    EulerAngles e;
    const double ct = clamp_unit(R(2, 2));
    e.theta = std::acos(ct);
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    if(st < 1e-12) {
        // gimbal degeneracy: the rotation is s_z[phi1 +/- phi2] s_x[theta];
        // report phi2 = 0 and fold the twist into phi1
        e.theta = ct > 0 ? 0.0 : M_PI;
        e.phi1 = wrap_angle(std::atan2(R(1, 0), R(0, 0)));
        e.phi2 = 0.0;
    } else {
        e.phi1 = wrap_angle(std::atan2(R(0, 2), -R(1, 2)));
        e.phi2 = wrap_angle(std::atan2(R(2, 0), R(2, 1)));
    }
    return e;
}

Rotation from_axis_angle(const AxisAngle& aa)
{
    const double norm = aa.axis.norm();
    if(std::abs(norm - 1.0) > 1e-9)
        throw InvalidArgumentError("from_axis_angle: axis must be a unit vector (norm = " +
            std::to_string(norm) + ")");
    return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(aa.angle, aa.axis / norm)));
}

AxisAngle to_axis_angle(const Rotation& x)
{
    const Eigen::Quaterniond& q = x.quaternion();
    AxisAngle aa;
    const double vn = q.vec().norm();
    aa.angle = 2.0 * std::atan2(vn, std::abs(q.w()));
    if(vn < 1e-300) {
        aa.axis = Eigen::Vector3d::UnitZ();
        aa.angle = 0.0;
        return aa;
    }
    aa.axis = q.vec() / vn;
    // canonical sign for the antipodal ambiguity at angle pi
    for(int i = 0; i < 3; ++i) {
        if(aa.axis[i] != 0) {
            if(aa.axis[i] < 0 && aa.angle > M_PI - 1e-12)
                aa.axis = -aa.axis;
            break;
        }
    }
    return aa;
}

double rotation_angle(const Rotation& x)
{
    // same value as acos((Tr - 1)/2) clamped, but accurate near both ends
    const Eigen::Quaterniond& q = x.quaternion();
    return 2.0 * std::atan2(q.vec().norm(), std::abs(q.w()));
}

double distance(const Rotation& x, const Rotation& y)
{
    return rotation_angle(y.inverse() * x);
}

double cos_half_distance_euler(const EulerAngles& a, const EulerAngles& b)
{
    const double dp1 = 0.5 * (a.phi1 - b.phi1);
    const double dp2 = 0.5 * (a.phi2 - b.phi2);
    const double dt = 0.5 * (a.theta - b.theta);
    const double pt = 0.5 * (a.theta + b.theta);
    const double c = std::cos(dp1) * std::cos(dp2) * std::cos(dt) -
        std::sin(dp1) * std::sin(dp2) * std::cos(pt);
    return clamp_unit(std::abs(c));
}

double distance_euler(const EulerAngles& a, const EulerAngles& b)
{
    return 2.0 * std::acos(cos_half_distance_euler(a, b));
}

} // namespace so3fit
