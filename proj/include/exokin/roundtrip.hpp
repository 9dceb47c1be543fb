#pragma once

#include "exokin/gait.hpp"
#include "exokin/ik.hpp"
#include "exokin/scene.hpp"

namespace exokin {

/// Gait-reconstruction experiment: foot trajectories are generated from the
/// gait table through forward kinematics, then the joint trajectories are
/// recovered by inverse kinematics and compared against the originals.
///
/// Each leg is solved sequentially with warm starts: frame 0 is seeded from
/// the measured angles at phase 0, every later frame from the previous
/// frame's solution.
struct GaitRoundtripOptions {
    int frames = 50;
    IkConfig ik;
};

struct GaitRoundtripResult {
    ComparisonSeries series;            // measured vs recovered, degrees
    int frames_total = 0;
    int frames_converged = 0;           // both legs converged
    double max_joint_error_deg = 0.0;   // over the 6 sagittal columns
    double max_foot_residual_m = 0.0;   // FK(recovered) vs target position
    std::array<double, 6> rms_joint_error_deg{};  // per column, R_hip..L_ankle

    bool all_converged() const { return frames_converged == frames_total; }
};

GaitRoundtripResult run_gait_roundtrip(const KinematicTree& tree,
                                       const GaitTrajectory& trajectory,
                                       const GaitRoundtripOptions& options = {});

}  // namespace exokin
