#pragma once

#include <array>
#include <string>
#include <vector>

#include "exokin/joints.hpp"
#include "exokin/transform.hpp"

namespace exokin {

/// The 12-DOF model: a waist base frame and two 6-joint leg chains, each
/// ending in a fixed (non-actuated) foot frame offset from the ankle.
///
/// World frame convention: x forward, y to the subject's left, z up, origin
/// at the midpoint between the feet in the zero configuration. Left and right
/// chains are mirror images across the sagittal (x-z) plane.
struct KinematicTree {
    std::string name;
    Transform base_pose;  // waist frame in the world frame
    std::array<JointSpec, kJointsPerLeg> left_chain;   // hip -> ankle
    std::array<JointSpec, kJointsPerLeg> right_chain;  // hip -> ankle
    Vector3 left_foot_offset;   // ankle frame -> foot frame, meters
    Vector3 right_foot_offset;

    const std::array<JointSpec, kJointsPerLeg>& chain(Side side) const {
        return side == Side::Left ? left_chain : right_chain;
    }
    const Vector3& foot_offset(Side side) const {
        return side == Side::Left ? left_foot_offset : right_foot_offset;
    }

    const JointSpec& spec(JointId id) const {
        return chain(id.side)[static_cast<int>(id.slot)];
    }

    /// Checks structure: slot ordering, unit axes, min < max limits, valid
    /// base pose, and left/right mirror symmetry (offsets flip the lateral
    /// y component; axes flip x and z). Throws std::invalid_argument.
    void validate() const;
};

/// Default anthropometry: pelvis half-width 0.12 m, thigh 0.40 m, shank
/// 0.40 m, ankle-to-sole 0.08 m, conservative human joint limits.
KinematicTree build_default_exoskeleton();

/// Transform from a joint's frame to its parent frame at angle q:
/// rotation = rodrigues(axis, q), translation = offset.
Transform local_transform(const JointSpec& spec, double q);

/// World pose of every joint frame plus the two foot frames.
struct FramePoses {
    std::array<Transform, kJointCount> joints;  // by joint_index
    Transform left_foot;
    Transform right_foot;

    const Transform& joint(JointId id) const { return joints[joint_index(id)]; }
    const Transform& foot(Side side) const {
        return side == Side::Left ? left_foot : right_foot;
    }
};

/// Position/attitude recursion down both chains:
/// p_j = p_i + R_i b_j, R_j = R_i rodrigues(a_j, q_j), then the fixed foot
/// offset. Joint limits are not enforced here.
FramePoses forward_kinematics(const KinematicTree& tree, const JointConfiguration& q);

/// The per-side foot entry of forward_kinematics.
Transform foot_pose(const KinematicTree& tree, const JointConfiguration& q, Side side);

/// Single-leg chain poses for one side, used by the IK Jacobian.
struct LegFrames {
    std::array<Transform, kJointsPerLeg> joints;
    Transform foot;
};
LegFrames leg_frames(const KinematicTree& tree, Side side, const Vector6& q);

struct LimitViolation {
    JointId id;
    double angle_rad;
    double excess_rad;  // distance outside [min, max], positive
};

/// Every joint whose angle lies outside its limits; empty means valid.
std::vector<LimitViolation> validate_limits(const KinematicTree& tree,
                                            const JointConfiguration& q);

}  // namespace exokin
