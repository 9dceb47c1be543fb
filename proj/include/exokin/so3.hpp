#pragma once

#include <Eigen/Core>

namespace exokin {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Antisymmetric (cross-product) matrix of a: skew(a) * b == a x b.
/// Throws std::invalid_argument if any component is non-finite.
Matrix3 skew(const Vector3& a);

/// A 3x3 rotation matrix with value semantics. Construction does not
/// validate; is_valid() checks orthonormality and det = +1.
struct Rotation {
    Matrix3 m = Matrix3::Identity();

    static Rotation identity() { return Rotation{}; }

    Rotation operator*(const Rotation& other) const { return Rotation{m * other.m}; }
    Vector3 operator*(const Vector3& v) const { return m * v; }
    Rotation transposed() const { return Rotation{m.transpose()}; }

    /// max |R^T R - I| over all entries.
    double orthonormality_error() const;
    bool is_valid(double tol = 1e-9) const;
};

/// Rotation about a unit axis by angle (radians):
/// I + skew(axis) sin(angle) + skew(axis)^2 (1 - cos(angle)).
/// Throws std::invalid_argument if |axis| deviates from 1 by more than 1e-9;
/// the message carries the measured norm.
Rotation rodrigues(const Vector3& axis, double angle);

/// Inverse of rodrigues: axis*angle vector with magnitude in [0, pi].
/// Identity maps to (0,0,0). Near angle = pi the axis is recovered from the
/// largest diagonal element and its sign is fixed so the first nonzero
/// component is positive.
Vector3 rotation_log(const Rotation& r);

}  // namespace exokin
