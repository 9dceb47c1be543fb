#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "exokin/so3.hpp"

namespace exokin {

using Vector6 = Eigen::Matrix<double, 6, 1>;

enum class Side { Left = 0, Right = 1 };

/// Chain position of a joint, in fixed hip-to-ankle order.
enum class JointSlot {
    HipFlexion = 0,
    HipAbduction,
    HipRotation,
    KneeFlexion,
    AnkleFlexion,
    AnkleAbduction,
};

inline constexpr int kJointsPerLeg = 6;
inline constexpr int kJointCount = 12;

struct JointId {
    Side side;
    JointSlot slot;

    friend bool operator==(const JointId&, const JointId&) = default;
};

/// Canonical flat index: left chain 0..5, right chain 6..11, hip to ankle.
inline int joint_index(JointId id) {
    return static_cast<int>(id.side) * kJointsPerLeg + static_cast<int>(id.slot);
}

inline JointId joint_from_index(int index) {
    return JointId{static_cast<Side>(index / kJointsPerLeg),
                   static_cast<JointSlot>(index % kJointsPerLeg)};
}

inline Side other_side(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

const char* to_string(Side side);           // "left" / "right"
const char* to_string(JointSlot slot);      // "hip_flexion", ...
std::string joint_name(JointId id);         // "L_hip_flexion", ...

struct JointLimits {
    double min_rad;
    double max_rad;
};

/// One revolute joint: rotation axis (unit, expressed in the joint's local
/// frame at zero configuration, where all local frames align with the world
/// frame) and the origin offset from the parent frame, meters.
struct JointSpec {
    JointId id;
    Vector3 axis;
    Vector3 offset;
    JointLimits limits;
};

/// All 12 joint angles, radians, indexed by JointId. Limits are not enforced
/// at construction; see validate_limits.
struct JointConfiguration {
    std::array<double, kJointCount> angles_rad{};

    double& operator[](JointId id) { return angles_rad[joint_index(id)]; }
    double operator[](JointId id) const { return angles_rad[joint_index(id)]; }

    Vector6 leg(Side side) const {
        Vector6 q;
        for (int i = 0; i < kJointsPerLeg; ++i) {
            q[i] = angles_rad[static_cast<int>(side) * kJointsPerLeg + i];
        }
        return q;
    }

    static JointConfiguration from_legs(const Vector6& left, const Vector6& right) {
        JointConfiguration q;
        for (int i = 0; i < kJointsPerLeg; ++i) {
            q.angles_rad[i] = left[i];
            q.angles_rad[kJointsPerLeg + i] = right[i];
        }
        return q;
    }

    bool all_finite() const {
        for (double a : angles_rad) {
            if (!std::isfinite(a)) return false;
        }
        return true;
    }
};

}  // namespace exokin
