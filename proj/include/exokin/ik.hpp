#pragma once

#include <Eigen/Core>

#include "exokin/tree.hpp"

namespace exokin {

using Matrix6 = Eigen::Matrix<double, 6, 6>;

struct IkConfig {
    enum class Update { DampedLeastSquares, JacobianTranspose };
    enum class Jacobian { Geometric, FiniteDifference };

    int max_iterations = 200;
    double position_tolerance = 1e-8;     // meters
    double orientation_tolerance = 1e-8;  // radians
    double damping = 1e-3;                // lambda in dq = J^T (JJ^T + l^2 I)^-1 e
    double step_scale = 1.0;              // in (0, 1]
    double fd_step = 1e-6;                // radians; finite-difference mode only
    Update update = Update::DampedLeastSquares;
    Jacobian jacobian = Jacobian::Geometric;

    void validate() const;  // throws std::invalid_argument
};

/// Difference between a current and a target foot pose. Both parts are
/// expressed in the world frame; orientation is the axis*angle vector of
/// the residual rotation.
struct PoseError {
    Vector3 position = Vector3::Zero();     // meters, target - current
    Vector3 orientation = Vector3::Zero();  // radians

    double position_norm() const { return position.norm(); }
    double orientation_norm() const { return orientation.norm(); }
};

PoseError pose_error(const Transform& current, const Transform& target);

enum class IkStatus {
    Converged,
    LimitClampedConverged,  // converged with at least one joint on a limit
    MaxIterations,
    Diverged,
};
const char* to_string(IkStatus status);

struct IkResult {
    Vector6 angles = Vector6::Zero();
    int iterations = 0;
    PoseError final_error;
    IkStatus status = IkStatus::MaxIterations;

    bool converged() const {
        return status == IkStatus::Converged || status == IkStatus::LimitClampedConverged;
    }
};

/// 6x6 geometric Jacobian of the foot pose w.r.t. the leg's joint angles.
/// Column k is (z_k x (p_foot - p_k); z_k) with z_k the joint's world-frame
/// axis and p_k its world-frame origin; rows 1-3 are linear, 4-6 angular,
/// world frame.
Matrix6 geometric_jacobian(const KinematicTree& tree, Side side, const Vector6& q);

/// Central-difference Jacobian of the foot pose, step h radians per joint.
Matrix6 finite_difference_jacobian(const KinematicTree& tree, Side side,
                                   const Vector6& q, double h);

/// Iterative numerical inverse kinematics: evaluate forward kinematics at the
/// current angles, compare the foot pose with the target, apply a correction,
/// repeat until both error norms are within tolerance. The default correction
/// is damped least squares; angles are clamped to the joint limits after each
/// step. Returns MaxIterations/Diverged statuses instead of throwing; throws
/// std::invalid_argument only for non-finite inputs or a bad config.
IkResult solve_ik(const KinematicTree& tree, Side side, const Transform& target,
                  const Vector6& q0, const IkConfig& config = {});

}  // namespace exokin
