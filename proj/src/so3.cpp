#include "exokin/so3.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace exokin {

Matrix3 skew(const Vector3& a) {
    if (!a.allFinite()) {
        throw std::invalid_argument("skew: non-finite input vector");
    }
    Matrix3 m;
    m <<     0, -a.z(),  a.y(),
         a.z(),      0, -a.x(),
        -a.y(),  a.x(),      0;
    return m;
}

double Rotation::orthonormality_error() const {
    return (m.transpose() * m - Matrix3::Identity()).cwiseAbs().maxCoeff();
}

bool Rotation::is_valid(double tol) const {
    return m.allFinite() && orthonormality_error() <= tol &&
           std::abs(m.determinant() - 1.0) <= tol;
}

Rotation rodrigues(const Vector3& axis, double angle) {
    const double norm = axis.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "rodrigues: axis must be unit length, got |axis| = " << norm;
        throw std::invalid_argument(msg.str());
    }
    const Matrix3 k = skew(axis);
    return Rotation{Matrix3::Identity() + std::sin(angle) * k +
                    (1.0 - std::cos(angle)) * k * k};
}

namespace {

// Axis extraction at angle ~ pi, where R ~ 2 a a^T - I and the antisymmetric
// part carries no usable sign information. Uses the largest diagonal element;
// the sign is normalized so the first nonzero component is positive.
Vector3 axis_near_pi(const Matrix3& m, double angle) {
    const Matrix3 sym = 0.5 * (m + m.transpose());
    const double c = std::cos(angle);
    int k = 0;
    sym.diagonal().maxCoeff(&k);
    Vector3 axis;
    axis[k] = std::sqrt(std::max(0.0, (sym(k, k) - c) / (1.0 - c)));
    for (int i = 0; i < 3; ++i) {
        if (i != k) axis[i] = sym(k, i) / ((1.0 - c) * axis[k]);
    }
    axis.normalize();
    for (int i = 0; i < 3; ++i) {
        if (std::abs(axis[i]) > 1e-12) {
            if (axis[i] < 0) axis = -axis;
            break;
        }
    }
    return axis;
}

}  // namespace

Vector3 rotation_log(const Rotation& r) {
    const Matrix3& m = r.m;
    const double cos_angle =
        std::clamp((m.trace() - 1.0) / 2.0, -1.0, 1.0);
    const double angle = std::acos(cos_angle);

    const Vector3 vee(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
    if (angle < 1e-9) {
        // vee == 2 sin(angle) * axis; first order in angle.
        return 0.5 * vee;
    }
    if (angle > M_PI - 1e-6) {
        return angle * axis_near_pi(m, angle);
    }
    return (angle / (2.0 * std::sin(angle))) * vee;
}

}  // namespace exokin
