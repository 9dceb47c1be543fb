#include "exokin/roundtrip.hpp"

#include <cmath>
#include <stdexcept>

namespace exokin {

namespace {

constexpr double kRadToDeg = 180.0 / M_PI;

// Sagittal slots in comparison-column order (hip, knee, ankle).
constexpr std::array<JointSlot, 3> kSagittalSlots = {
    JointSlot::HipFlexion, JointSlot::KneeFlexion, JointSlot::AnkleFlexion};

}  // namespace

GaitRoundtripResult run_gait_roundtrip(const KinematicTree& tree,
                                       const GaitTrajectory& trajectory,
                                       const GaitRoundtripOptions& options) {
    if (options.frames < 1) {
        throw std::invalid_argument("gait roundtrip: frames must be >= 1");
    }

    GaitRoundtripResult result;
    result.frames_total = options.frames;

    Vector6 seed_left = Vector6::Zero();
    Vector6 seed_right = Vector6::Zero();
    std::array<double, 6> sum_sq{};

    for (int k = 0; k < options.frames; ++k) {
        const double phase = static_cast<double>(k) / options.frames;
        const JointConfiguration measured = expand_to_configuration(tree, trajectory, phase);
        const FramePoses poses = forward_kinematics(tree, measured);

        if (k == 0) {
            seed_left = measured.leg(Side::Left);
            seed_right = measured.leg(Side::Right);
        }

        bool frame_converged = true;
        result.series.phases.push_back(phase);
        for (Side side : {Side::Right, Side::Left}) {
            Vector6& seed = side == Side::Left ? seed_left : seed_right;
            const Transform& target = poses.foot(side);
            const IkResult ik = solve_ik(tree, side, target, seed, options.ik);
            frame_converged = frame_converged && ik.converged();
            if (ik.converged()) seed = ik.angles;

            const Transform reached = leg_frames(tree, side, ik.angles).foot;
            result.max_foot_residual_m =
                std::max(result.max_foot_residual_m,
                         (reached.translation - target.translation).norm());

            const Vector6 measured_leg = measured.leg(side);
            const int column_base = side == Side::Right ? 0 : 3;
            for (int j = 0; j < 3; ++j) {
                const int slot = static_cast<int>(kSagittalSlots[j]);
                const double meas_deg = measured_leg[slot] * kRadToDeg;
                const double ik_deg = ik.angles[slot] * kRadToDeg;
                auto& column = result.series.joints[column_base + j];
                column.measured_deg.push_back(meas_deg);
                column.recovered_deg.push_back(ik_deg);
                const double err = std::abs(ik_deg - meas_deg);
                result.max_joint_error_deg = std::max(result.max_joint_error_deg, err);
                sum_sq[column_base + j] += err * err;
            }
        }
        if (frame_converged) ++result.frames_converged;
    }

    for (int c = 0; c < 6; ++c) {
        result.rms_joint_error_deg[c] = std::sqrt(sum_sq[c] / options.frames);
    }
    return result;
}

}  // namespace exokin
