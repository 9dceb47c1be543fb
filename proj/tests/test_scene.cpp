#include <doctest.h>

#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "exokin/scene.hpp"
#include "test_support.hpp"

using namespace exokin;
using testsupport::random_in_limit_configuration;

namespace {

const SceneSegment& find_segment(const SceneFrame& frame, const std::string& label) {
    for (const SceneSegment& s : frame.segments) {
        if (s.label == label) return s;
    }
    REQUIRE_MESSAGE(false, "missing segment " << label);
    static SceneSegment dummy;
    return dummy;
}

// Minimal CSV reader for the parse-back checks.
std::vector<std::vector<double>> read_csv_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

TEST_CASE("zero configuration projects to seven segments with vertical legs") {
    const KinematicTree tree = build_default_exoskeleton();
    const SceneFrame frame =
        scene_from_poses(forward_kinematics(tree, JointConfiguration{}), 0.0);

    CHECK(frame.segments.size() == 7);
    CHECK(frame.markers.size() == kJointCount);

    for (const char* label : {"L_thigh", "R_thigh", "L_shank", "R_shank"}) {
        const SceneSegment& s = find_segment(frame, label);
        CHECK(s.from_cm.x() == s.to_cm.x());
        CHECK(s.from_cm.y() == s.to_cm.y());
        CHECK(s.from_cm.z() > s.to_cm.z());  // pointing down
    }
    const SceneSegment& pelvis = find_segment(frame, "pelvis");
    CHECK((pelvis.from_cm - pelvis.to_cm).norm() == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("positions are meters scaled by one hundred") {
    const KinematicTree tree = build_default_exoskeleton();
    const FramePoses poses = forward_kinematics(tree, JointConfiguration{});
    const SceneFrame frame = scene_from_poses(poses, 0.25);
    CHECK(frame.phase == 0.25);
    const SceneSegment& foot = find_segment(frame, "L_foot");
    CHECK((foot.from_cm -
           100.0 * poses.joint({Side::Left, JointSlot::AnkleFlexion}).translation)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((foot.to_cm - 100.0 * poses.left_foot.translation).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("segment lengths equal the tree link lengths in any configuration") {
    const KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(103);
    for (int i = 0; i < 100; ++i) {
        const JointConfiguration q = random_in_limit_configuration(tree, rng);
        const SceneFrame frame = scene_from_poses(forward_kinematics(tree, q), 0.0);
        for (const char* side : {"L", "R"}) {
            const double thigh =
                (find_segment(frame, side + std::string("_thigh")).from_cm -
                 find_segment(frame, side + std::string("_thigh")).to_cm)
                    .norm();
            const double shank =
                (find_segment(frame, side + std::string("_shank")).from_cm -
                 find_segment(frame, side + std::string("_shank")).to_cm)
                    .norm();
            const double foot =
                (find_segment(frame, side + std::string("_foot")).from_cm -
                 find_segment(frame, side + std::string("_foot")).to_cm)
                    .norm();
            CHECK(thigh == doctest::Approx(40.0).epsilon(1e-11));
            CHECK(shank == doctest::Approx(40.0).epsilon(1e-11));
            CHECK(foot == doctest::Approx(8.0).epsilon(1e-11));
        }
    }
}

TEST_CASE("scene sequence samples phases k/n") {
    const KinematicTree tree = build_default_exoskeleton();
    const GaitTrajectory& traj = bundled_gait();

    const auto ten = scene_sequence(tree, traj, 10);
    REQUIRE(ten.size() == 10);
    for (int k = 0; k < 10; ++k) CHECK(ten[k].phase == doctest::Approx(k / 10.0));

    const auto one = scene_sequence(tree, traj, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].phase == 0.0);

    CHECK_THROWS_AS(scene_sequence(tree, traj, 0), std::invalid_argument);
}

TEST_CASE("consecutive foot positions move smoothly at fifty frames") {
    const KinematicTree tree = build_default_exoskeleton();
    const auto frames = scene_sequence(tree, bundled_gait(), 50);
    double max_step_cm = 0.0;
    for (size_t k = 0; k < frames.size(); ++k) {
        const auto& a = find_segment(frames[k], "R_foot");
        const auto& b = find_segment(frames[(k + 1) % frames.size()], "R_foot");
        max_step_cm = std::max(max_step_cm, (a.to_cm - b.to_cm).norm());
    }
    CHECK(max_step_cm < 15.0);
}

TEST_CASE("scene JSON has the documented shape and is deterministic") {
    const KinematicTree tree = build_default_exoskeleton();
    const auto frames = scene_sequence(tree, bundled_gait(), 3);
    const nlohmann::json doc = scene_to_json(frames);

    CHECK(doc.at("schemaVersion") == 1);
    REQUIRE(doc.at("frames").is_array());
    REQUIRE(doc["frames"].size() == 3);
    for (const auto& frame : doc["frames"]) {
        CHECK(frame.at("phase").is_number());
        for (const auto& seg : frame.at("segments")) {
            CHECK(seg.at("from").size() == 3);
            CHECK(seg.at("to").size() == 3);
            CHECK(seg.at("label").is_string());
        }
        for (const auto& marker : frame.at("markers")) {
            CHECK(marker.at("at").size() == 3);
            CHECK(marker.at("label").is_string());
        }
    }
    CHECK(doc.dump(2) == scene_to_json(scene_sequence(tree, bundled_gait(), 3)).dump(2));
}

TEST_CASE("left/right scenes are offset by half a cycle") {
    const KinematicTree tree = build_default_exoskeleton();
    const auto frames = scene_sequence(tree, bundled_gait(), 10);
    for (int k = 0; k < 10; ++k) {
        const Vector3 left = find_segment(frames[k], "L_foot").to_cm;
        const Vector3 right = find_segment(frames[(k + 5) % 10], "R_foot").to_cm;
        // Mirrored across the sagittal plane: same x and z, opposite y.
        CHECK(std::abs(left.x() - right.x()) <= 1e-9);
        CHECK(std::abs(left.y() + right.y()) <= 1e-9);
        CHECK(std::abs(left.z() - right.z()) <= 1e-9);
    }
}

TEST_CASE("comparison CSV layout") {
    ComparisonSeries series;
    SUBCASE("empty series is header-only") {
        const std::string text = emit_comparison_csv(series);
        CHECK(text ==
              "phase,R_hip_meas,R_hip_ik,R_knee_meas,R_knee_ik,R_ankle_meas,R_ankle_ik,"
              "L_hip_meas,L_hip_ik,L_knee_meas,L_knee_ik,L_ankle_meas,L_ankle_ik\n");
    }
    SUBCASE("rows have thirteen columns and parse back to six digits") {
        std::mt19937_64 rng(107);
        std::uniform_real_distribution<double> dist(-60, 60);
        for (int row = 0; row < 20; ++row) {
            series.phases.push_back(row / 20.0);
            for (auto& joint : series.joints) {
                joint.measured_deg.push_back(dist(rng));
                joint.recovered_deg.push_back(dist(rng));
            }
        }
        const std::string text = emit_comparison_csv(series);
        const auto rows = read_csv_rows(text);
        REQUIRE(rows.size() == 20);
        for (size_t r = 0; r < rows.size(); ++r) {
            REQUIRE(rows[r].size() == 13);
            CHECK(rows[r][0] == doctest::Approx(series.phases[r]).epsilon(1e-6));
            for (int j = 0; j < 6; ++j) {
                CHECK(rows[r][1 + 2 * j] ==
                      doctest::Approx(series.joints[j].measured_deg[r]).epsilon(1e-6));
                CHECK(rows[r][2 + 2 * j] ==
                      doctest::Approx(series.joints[j].recovered_deg[r]).epsilon(1e-6));
            }
        }
    }
    SUBCASE("length mismatch is rejected") {
        series.phases = {0.0, 0.5};
        series.joints[0].measured_deg = {1.0};
        series.joints[0].recovered_deg = {1.0, 2.0};
        CHECK_THROWS_AS(emit_comparison_csv(series), std::invalid_argument);
    }
}
