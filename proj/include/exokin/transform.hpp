#pragma once

#include "exokin/so3.hpp"

namespace exokin {

/// Rigid transform stored as rotation + translation. Equivalent to the 4x4
/// homogeneous matrix [R p; 0 0 0 1]; the constant bottom row is never stored.
struct Transform {
    Rotation rotation;
    Vector3 translation = Vector3::Zero();

    static Transform identity() { return Transform{}; }

    /// Chain composition: rotation R1*R2, translation p1 + R1*p2.
    Transform operator*(const Transform& other) const {
        return Transform{rotation * other.rotation,
                         translation + rotation * other.translation};
    }

    /// Apply to a point.
    Vector3 operator*(const Vector3& p) const { return rotation * p + translation; }

    /// (R^T, -R^T p), so that t * t.inverse() == identity.
    Transform inverse() const {
        Rotation rt = rotation.transposed();
        return Transform{rt, -(rt * translation)};
    }

    bool is_valid(double tol = 1e-9) const {
        return rotation.is_valid(tol) && translation.allFinite();
    }
};

}  // namespace exokin
