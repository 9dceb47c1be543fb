#include "exokin/tree.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace exokin {

const char* to_string(Side side) {
    return side == Side::Left ? "left" : "right";
}

const char* to_string(JointSlot slot) {
    switch (slot) {
        case JointSlot::HipFlexion: return "hip_flexion";
        case JointSlot::HipAbduction: return "hip_abduction";
        case JointSlot::HipRotation: return "hip_rotation";
        case JointSlot::KneeFlexion: return "knee_flexion";
        case JointSlot::AnkleFlexion: return "ankle_flexion";
        case JointSlot::AnkleAbduction: return "ankle_abduction";
    }
    return "?";
}

std::string joint_name(JointId id) {
    return std::string(id.side == Side::Left ? "L_" : "R_") + to_string(id.slot);
}

namespace {

constexpr double kPelvisHalfWidth = 0.12;
constexpr double kThighLength = 0.40;
constexpr double kShankLength = 0.40;
constexpr double kAnkleToSole = 0.08;

// Mirror of a rotation axis across the sagittal plane: a sagittal rotation
// mirrors to itself, so the lateral (y) component is kept and x,z flip.
Vector3 mirror_axis(const Vector3& a) { return Vector3(-a.x(), a.y(), -a.z()); }

Vector3 mirror_offset(const Vector3& b) { return Vector3(b.x(), -b.y(), b.z()); }

}  // namespace

KinematicTree build_default_exoskeleton() {
    KinematicTree tree;
    tree.name = "default-exoskeleton";
    // Waist at hip height; feet end up at z = 0, symmetric about the origin.
    tree.base_pose = Transform{Rotation::identity(),
                               Vector3(0, 0, kThighLength + kShankLength + kAnkleToSole)};

    // Left chain. Axis signs follow the clinical convention: positive hip
    // flexion swings the thigh forward (-y axis), positive knee flexion
    // swings the shank backward (+y), positive ankle flexion is dorsiflexion
    // (-y), positive abduction moves the limb away from the midline.
    auto make = [](Side side, JointSlot slot, Vector3 axis, Vector3 offset,
                   double lo, double hi) {
        return JointSpec{JointId{side, slot}, axis, offset, JointLimits{lo, hi}};
    };
    tree.left_chain = {
        make(Side::Left, JointSlot::HipFlexion, {0, -1, 0}, {0, kPelvisHalfWidth, 0},
             -0.52, 2.09),
        make(Side::Left, JointSlot::HipAbduction, {1, 0, 0}, {0, 0, 0}, -0.35, 0.52),
        make(Side::Left, JointSlot::HipRotation, {0, 0, 1}, {0, 0, 0}, -0.52, 0.52),
        make(Side::Left, JointSlot::KneeFlexion, {0, 1, 0}, {0, 0, -kThighLength},
             0.0, 2.40),
        make(Side::Left, JointSlot::AnkleFlexion, {0, -1, 0}, {0, 0, -kShankLength},
             -0.87, 0.52),
        make(Side::Left, JointSlot::AnkleAbduction, {1, 0, 0}, {0, 0, 0}, -0.35, 0.35),
    };
    for (int i = 0; i < kJointsPerLeg; ++i) {
        const JointSpec& l = tree.left_chain[i];
        tree.right_chain[i] = JointSpec{JointId{Side::Right, l.id.slot},
                                        mirror_axis(l.axis), mirror_offset(l.offset),
                                        l.limits};
    }
    tree.left_foot_offset = Vector3(0, 0, -kAnkleToSole);
    tree.right_foot_offset = Vector3(0, 0, -kAnkleToSole);
    return tree;
}

void KinematicTree::validate() const {
    std::ostringstream problems;
    auto complain = [&problems](const std::string& what) { problems << "  " << what << "\n"; };

    if (!base_pose.is_valid()) complain("base pose is not a valid transform");
    for (Side side : {Side::Left, Side::Right}) {
        const auto& c = chain(side);
        for (int i = 0; i < kJointsPerLeg; ++i) {
            const JointSpec& s = c[i];
            const JointId expected{side, static_cast<JointSlot>(i)};
            if (!(s.id == expected)) {
                complain("chain slot " + std::to_string(i) + " holds " + joint_name(s.id) +
                         ", expected " + joint_name(expected));
            }
            if (!s.axis.allFinite() || std::abs(s.axis.norm() - 1.0) > 1e-12) {
                complain(joint_name(s.id) + ": axis is not unit length");
            }
            if (!s.offset.allFinite()) complain(joint_name(s.id) + ": non-finite offset");
            if (!(s.limits.min_rad < s.limits.max_rad)) {
                complain(joint_name(s.id) + ": limits min must be < max");
            }
        }
        if (!foot_offset(side).allFinite()) {
            complain(std::string(to_string(side)) + " foot offset is non-finite");
        }
    }
    for (int i = 0; i < kJointsPerLeg; ++i) {
        const JointSpec& l = left_chain[i];
        const JointSpec& r = right_chain[i];
        if ((l.axis - mirror_axis(r.axis)).cwiseAbs().maxCoeff() > 1e-9 ||
            (l.offset - mirror_offset(r.offset)).cwiseAbs().maxCoeff() > 1e-9) {
            complain("left/right " + std::string(to_string(l.id.slot)) +
                     " are not sagittal mirror images");
        }
    }
    if ((left_foot_offset - mirror_offset(right_foot_offset)).cwiseAbs().maxCoeff() > 1e-9) {
        complain("foot offsets are not sagittal mirror images");
    }

    const std::string report = problems.str();
    if (!report.empty()) {
        throw std::invalid_argument("invalid kinematic tree '" + name + "':\n" + report);
    }
}

Transform local_transform(const JointSpec& spec, double q) {
    return Transform{rodrigues(spec.axis, q), spec.offset};
}

LegFrames leg_frames(const KinematicTree& tree, Side side, const Vector6& q) {
    LegFrames frames;
    Transform pose = tree.base_pose;
    const auto& chain = tree.chain(side);
    for (int i = 0; i < kJointsPerLeg; ++i) {
        pose = pose * local_transform(chain[i], q[i]);
        frames.joints[i] = pose;
    }
    frames.foot = pose * Transform{Rotation::identity(), tree.foot_offset(side)};
    return frames;
}

FramePoses forward_kinematics(const KinematicTree& tree, const JointConfiguration& q) {
    FramePoses poses;
    for (Side side : {Side::Left, Side::Right}) {
        const LegFrames frames = leg_frames(tree, side, q.leg(side));
        for (int i = 0; i < kJointsPerLeg; ++i) {
            poses.joints[joint_index(JointId{side, static_cast<JointSlot>(i)})] =
                frames.joints[i];
        }
        (side == Side::Left ? poses.left_foot : poses.right_foot) = frames.foot;
    }
    return poses;
}

Transform foot_pose(const KinematicTree& tree, const JointConfiguration& q, Side side) {
    return leg_frames(tree, side, q.leg(side)).foot;
}

std::vector<LimitViolation> validate_limits(const KinematicTree& tree,
                                            const JointConfiguration& q) {
    std::vector<LimitViolation> violations;
    for (int i = 0; i < kJointCount; ++i) {
        const JointId id = joint_from_index(i);
        const JointLimits& lim = tree.spec(id).limits;
        const double angle = q.angles_rad[i];
        if (angle < lim.min_rad) {
            violations.push_back({id, angle, lim.min_rad - angle});
        } else if (angle > lim.max_rad) {
            violations.push_back({id, angle, angle - lim.max_rad});
        }
    }
    return violations;
}

}  // namespace exokin
