#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "exokin/gait.hpp"
#include "exokin/tree.hpp"

namespace exokin {

/// Scene geometry is line segments and point markers, centimeters.
struct SceneSegment {
    Vector3 from_cm;
    Vector3 to_cm;
    std::string label;
};

struct SceneMarker {
    Vector3 at_cm;
    std::string label;
};

struct SceneFrame {
    double phase;
    std::vector<SceneSegment> segments;
    std::vector<SceneMarker> markers;
};

/// One segment per link (pelvis bar, thighs, shanks, feet) with endpoints at
/// the world positions of adjacent frames, meters converted to centimeters,
/// and one marker per joint frame.
SceneFrame scene_from_poses(const FramePoses& poses, double phase);

/// Frames at phases k/n for k = 0..n-1, via expand_to_configuration and
/// forward_kinematics. Limit violations propagate as LimitError.
std::vector<SceneFrame> scene_sequence(const KinematicTree& tree,
                                       const GaitTrajectory& trajectory, int frames);

/// {"schemaVersion": 1, "frames": [{phase, segments: [{from, to, label}],
///  markers: [{at, label}]}]} — the schema shipped in docs/scene_schema.json.
nlohmann::json scene_to_json(const std::vector<SceneFrame>& frames);

/// Measured vs. IK-recovered sagittal joint angles per phase, degrees.
/// Column order: R_hip, R_knee, R_ankle, L_hip, L_knee, L_ankle.
struct ComparisonSeries {
    struct JointColumns {
        std::vector<double> measured_deg;
        std::vector<double> recovered_deg;
    };

    std::vector<double> phases;
    std::array<JointColumns, 6> joints;

    static const std::array<const char*, 6>& joint_tags();  // "R_hip", ...
};

/// CSV with header phase,R_hip_meas,R_hip_ik,...,L_ankle_meas,L_ankle_ik and
/// one row per phase, 6 significant digits. Throws std::invalid_argument on
/// column length mismatch.
std::string emit_comparison_csv(const ComparisonSeries& series);

}  // namespace exokin
