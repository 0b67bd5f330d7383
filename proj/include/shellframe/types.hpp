#pragma once

#include <Eigen/Dense>

namespace shellframe {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Coordinate point on the mid-section.
struct SurfacePoint {
    double a1 = 0.0;
    double a2 = 0.0;
};

/// Coordinate point in the 3D shell (alpha1, alpha2, z).
struct ShellPoint {
    double a1 = 0.0;
    double a2 = 0.0;
    double z = 0.0;
};

/// Rectangular coordinate domain of a patch.
struct Domain {
    double a1min = 0.0, a1max = 1.0;
    double a2min = 0.0, a2max = 1.0;

    double extent1() const { return a1max - a1min; }
    double extent2() const { return a2max - a2min; }
    bool contains(const SurfacePoint& p, double slack = 0.0) const {
        return p.a1 >= a1min - slack && p.a1 <= a1max + slack &&
               p.a2 >= a2min - slack && p.a2 <= a2max + slack;
    }
};

inline Mat2 symmetrize(const Mat2& m) { return 0.5 * (m + m.transpose()); }

} // namespace shellframe
