#include "exokin/scene.hpp"

#include <cstdio>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace exokin {

namespace {

constexpr double kMetersToCm = 100.0;

Vector3 cm(const Vector3& meters) { return meters * kMetersToCm; }

}  // namespace

SceneFrame scene_from_poses(const FramePoses& poses, double phase) {
    SceneFrame frame;
    frame.phase = phase;

    auto at = [&poses](Side side, JointSlot slot) {
        return poses.joint(JointId{side, slot}).translation;
    };

    frame.segments.push_back({cm(at(Side::Left, JointSlot::HipFlexion)),
                              cm(at(Side::Right, JointSlot::HipFlexion)), "pelvis"});
    for (Side side : {Side::Left, Side::Right}) {
        const std::string prefix = side == Side::Left ? "L_" : "R_";
        frame.segments.push_back({cm(at(side, JointSlot::HipFlexion)),
                                  cm(at(side, JointSlot::KneeFlexion)), prefix + "thigh"});
        frame.segments.push_back({cm(at(side, JointSlot::KneeFlexion)),
                                  cm(at(side, JointSlot::AnkleFlexion)), prefix + "shank"});
        frame.segments.push_back({cm(at(side, JointSlot::AnkleFlexion)),
                                  cm(poses.foot(side).translation), prefix + "foot"});
    }
    for (int i = 0; i < kJointCount; ++i) {
        const JointId id = joint_from_index(i);
        frame.markers.push_back({cm(poses.joint(id).translation), joint_name(id)});
    }
    return frame;
}

std::vector<SceneFrame> scene_sequence(const KinematicTree& tree,
                                       const GaitTrajectory& trajectory, int frames) {
    if (frames < 1) throw std::invalid_argument("scene_sequence: frames must be >= 1");
    std::vector<SceneFrame> out;
    out.reserve(frames);
    for (int k = 0; k < frames; ++k) {
        const double phase = static_cast<double>(k) / frames;
        const JointConfiguration q = expand_to_configuration(tree, trajectory, phase);
        out.push_back(scene_from_poses(forward_kinematics(tree, q), phase));
    }
    return out;
}

namespace {

nlohmann::json point_json(const Vector3& p) {
    return nlohmann::json::array({p.x(), p.y(), p.z()});
}

}  // namespace

nlohmann::json scene_to_json(const std::vector<SceneFrame>& frames) {
    nlohmann::json frames_json = nlohmann::json::array();
    for (const SceneFrame& frame : frames) {
        nlohmann::json segments = nlohmann::json::array();
        for (const SceneSegment& s : frame.segments) {
            segments.push_back({{"from", point_json(s.from_cm)},
                                {"to", point_json(s.to_cm)},
                                {"label", s.label}});
        }
        nlohmann::json markers = nlohmann::json::array();
        for (const SceneMarker& m : frame.markers) {
            markers.push_back({{"at", point_json(m.at_cm)}, {"label", m.label}});
        }
        frames_json.push_back({{"phase", frame.phase},
                               {"segments", std::move(segments)},
                               {"markers", std::move(markers)}});
    }
    return nlohmann::json{{"schemaVersion", 1}, {"frames", std::move(frames_json)}};
}

const std::array<const char*, 6>& ComparisonSeries::joint_tags() {
    static const std::array<const char*, 6> tags = {"R_hip",   "R_knee",  "R_ankle",
                                                    "L_hip",   "L_knee",  "L_ankle"};
    return tags;
}

std::string emit_comparison_csv(const ComparisonSeries& series) {
    for (const auto& joint : series.joints) {
        if (joint.measured_deg.size() != series.phases.size() ||
            joint.recovered_deg.size() != series.phases.size()) {
            throw std::invalid_argument("comparison series: column length mismatch");
        }
    }

    std::string out = "phase";
    for (const char* tag : ComparisonSeries::joint_tags()) {
        out += ",";
        out += tag;
        out += "_meas,";
        out += tag;
        out += "_ik";
    }
    out += "\n";

    char buf[64];
    for (size_t row = 0; row < series.phases.size(); ++row) {
        std::snprintf(buf, sizeof(buf), "%.6g", series.phases[row]);
        out += buf;
        for (const auto& joint : series.joints) {
            std::snprintf(buf, sizeof(buf), ",%.6g,%.6g", joint.measured_deg[row],
                          joint.recovered_deg[row]);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace exokin
