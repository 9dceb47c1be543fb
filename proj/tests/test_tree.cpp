#include <doctest.h>

#include <random>

#include <nlohmann/json.hpp>

#include "exokin/tree.hpp"
#include "exokin/tree_json.hpp"
#include "test_support.hpp"

using namespace exokin;
using testsupport::max_abs_diff;
using testsupport::oracle_leg_foot_mat4;
using testsupport::oracle_local_mat4;
using testsupport::random_in_limit_configuration;
using testsupport::random_unit_axis;
using testsupport::to_mat4;

namespace {

Vector3 mirror_point(const Vector3& p) { return Vector3(p.x(), -p.y(), p.z()); }

Matrix3 mirror_rotation(const Matrix3& r) {
    const Matrix3 m = Vector3(1, -1, 1).asDiagonal();
    return m * r * m;
}

JointConfiguration swap_sides(const JointConfiguration& q) {
    JointConfiguration out;
    for (int i = 0; i < kJointsPerLeg; ++i) {
        out.angles_rad[i] = q.angles_rad[kJointsPerLeg + i];
        out.angles_rad[kJointsPerLeg + i] = q.angles_rad[i];
    }
    return out;
}

}  // namespace

TEST_CASE("default exoskeleton has the 12-DOF layout") {
    const KinematicTree tree = build_default_exoskeleton();
    CHECK_NOTHROW(tree.validate());

    CHECK(tree.left_chain.size() == 6);
    CHECK(tree.right_chain.size() == 6);
    for (int i = 0; i < kJointsPerLeg; ++i) {
        CHECK(tree.left_chain[i].id.slot == static_cast<JointSlot>(i));
        CHECK(tree.right_chain[i].id.slot == static_cast<JointSlot>(i));
    }

    // Mirror structure: lateral offsets flip sign.
    const Vector3 left_hip = tree.left_chain[0].offset;
    const Vector3 right_hip = tree.right_chain[0].offset;
    CHECK(left_hip.y() == -right_hip.y());
    CHECK(left_hip.y() > 0);  // left is +y
    CHECK(left_hip.x() == right_hip.x());
    CHECK(left_hip.z() == right_hip.z());
}

TEST_CASE("default zero configuration puts the feet on the ground, symmetric") {
    const KinematicTree tree = build_default_exoskeleton();

    // Independent route: at zero configuration every frame position is the
    // plain sum of offsets down the chain.
    for (Side side : {Side::Left, Side::Right}) {
        Vector3 sum = tree.base_pose.translation;
        for (const JointSpec& s : tree.chain(side)) sum += s.offset;
        sum += tree.foot_offset(side);

        const Transform foot = foot_pose(tree, JointConfiguration{}, side);
        CHECK((foot.translation - sum).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK(std::abs(foot.translation.z()) <= 1e-15);  // on the ground
    }
    const Vector3 l = foot_pose(tree, JointConfiguration{}, Side::Left).translation;
    const Vector3 r = foot_pose(tree, JointConfiguration{}, Side::Right).translation;
    CHECK((l + r).cwiseAbs().maxCoeff() <= 1e-15);  // midpoint is the world origin
}

TEST_CASE("local_transform is rotation about the axis plus the fixed offset") {
    const KinematicTree tree = build_default_exoskeleton();
    const JointSpec& knee = tree.left_chain[3];

    const Transform at_zero = local_transform(knee, 0.0);
    CHECK(at_zero.rotation.m.isIdentity(0.0));
    CHECK(at_zero.translation.isApprox(knee.offset, 0));

    JointSpec spec = knee;
    spec.axis = Vector3(0, 1, 0);
    spec.offset = Vector3(0, 0, -0.4);
    const Transform quarter = local_transform(spec, M_PI / 2);
    CHECK(quarter.translation.isApprox(Vector3(0, 0, -0.4), 0));  // independent of q
    CHECK((quarter.rotation.m - rodrigues(Vector3(0, 1, 0), M_PI / 2).m).isZero(0.0));

    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_real_distribution<double> len(-1, 1);
    for (int i = 0; i < 200; ++i) {
        spec.axis = random_unit_axis(rng);
        spec.offset = Vector3(len(rng), len(rng), len(rng));
        const double q = angle(rng);
        CHECK(max_abs_diff(to_mat4(local_transform(spec, q)),
                           oracle_local_mat4(spec.axis, q, spec.offset)) <= 1e-12);
    }
}

TEST_CASE("forward kinematics at zero keeps the base attitude everywhere") {
    const KinematicTree tree = build_default_exoskeleton();
    const FramePoses poses = forward_kinematics(tree, JointConfiguration{});
    for (const Transform& t : poses.joints) {
        CHECK((t.rotation.m - tree.base_pose.rotation.m).isZero(0.0));
    }
    // Positions are cumulative sums of offsets.
    for (Side side : {Side::Left, Side::Right}) {
        Vector3 sum = tree.base_pose.translation;
        for (int i = 0; i < kJointsPerLeg; ++i) {
            sum += tree.chain(side)[i].offset;
            const JointId id{side, static_cast<JointSlot>(i)};
            CHECK((poses.joint(id).translation - sum).cwiseAbs().maxCoeff() <= 1e-15);
        }
    }
}

TEST_CASE("bent knee matches planar two-link trigonometry") {
    const KinematicTree tree = build_default_exoskeleton();
    const double theta = M_PI / 2;
    JointConfiguration q;
    q[{Side::Right, JointSlot::KneeFlexion}] = theta;

    // Independent planar computation with the default thigh/shank lengths:
    // positive knee flexion swings the shank backward in the sagittal plane.
    const Vector3 hip(0, -0.12, 0.88);
    const double thigh = 0.40, shank = 0.40, sole = 0.08;
    const Vector3 expected =
        hip + Vector3(0, 0, -thigh) +
        Vector3(-(shank + sole) * std::sin(theta), 0, -(shank + sole) * std::cos(theta));

    const Transform foot = foot_pose(tree, q, Side::Right);
    CHECK((foot.translation - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("forward kinematics matches the 4x4 chain-product oracle") {
    const KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const JointConfiguration q = random_in_limit_configuration(tree, rng);
        for (Side side : {Side::Left, Side::Right}) {
            const Eigen::Matrix4d expected = oracle_leg_foot_mat4(tree, side, q.leg(side));
            const Transform foot = foot_pose(tree, q, side);
            CHECK(max_abs_diff(to_mat4(foot), expected) <= 1e-12);
        }
    }
}

TEST_CASE("foot_pose agrees with the forward_kinematics entry") {
    const KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(47);
    for (int i = 0; i < 100; ++i) {
        const JointConfiguration q = random_in_limit_configuration(tree, rng);
        const FramePoses poses = forward_kinematics(tree, q);
        for (Side side : {Side::Left, Side::Right}) {
            const Transform direct = foot_pose(tree, q, side);
            CHECK(max_abs_diff(to_mat4(direct), to_mat4(poses.foot(side))) == 0.0);
        }
    }
}

TEST_CASE("mirrored configurations mirror the foot poses") {
    const KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(53);
    for (int i = 0; i < 100; ++i) {
        const JointConfiguration q = random_in_limit_configuration(tree, rng);
        const Transform right = foot_pose(tree, q, Side::Right);
        const Transform left_of_mirror = foot_pose(tree, swap_sides(q), Side::Left);
        CHECK((left_of_mirror.translation - mirror_point(right.translation))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
        CHECK((left_of_mirror.rotation.m - mirror_rotation(right.rotation.m))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-12);
    }
}

TEST_CASE("translating the base translates every output position") {
    KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(59);
    const JointConfiguration q = random_in_limit_configuration(tree, rng);
    const FramePoses before = forward_kinematics(tree, q);

    const Vector3 d(0.3, -1.2, 2.5);
    tree.base_pose.translation += d;
    const FramePoses after = forward_kinematics(tree, q);

    for (int i = 0; i < kJointCount; ++i) {
        CHECK((after.joints[i].translation - before.joints[i].translation - d)
                  .cwiseAbs()
                  .maxCoeff() <= 1e-15);
        CHECK((after.joints[i].rotation.m - before.joints[i].rotation.m).isZero(0.0));
    }
}

TEST_CASE("rotations stay orthonormal through the chains") {
    const KinematicTree tree = build_default_exoskeleton();
    std::mt19937_64 rng(61);
    for (int i = 0; i < 200; ++i) {
        const JointConfiguration q = random_in_limit_configuration(tree, rng);
        const FramePoses poses = forward_kinematics(tree, q);
        for (const Transform& t : poses.joints) CHECK(t.rotation.is_valid(1e-9));
        CHECK(poses.left_foot.rotation.is_valid(1e-9));
        CHECK(poses.right_foot.rotation.is_valid(1e-9));
    }
}

TEST_CASE("validate_limits reports excess per joint") {
    const KinematicTree tree = build_default_exoskeleton();

    CHECK(validate_limits(tree, JointConfiguration{}).empty());

    JointConfiguration q;
    q[{Side::Left, JointSlot::KneeFlexion}] = -1.0;  // knee limits are [0, 2.4]
    const auto violations = validate_limits(tree, q);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].id == JointId{Side::Left, JointSlot::KneeFlexion});
    CHECK(violations[0].excess_rad == doctest::Approx(1.0).epsilon(1e-12));

    JointConfiguration all_high;
    for (int i = 0; i < kJointCount; ++i) {
        all_high.angles_rad[i] = tree.spec(joint_from_index(i)).limits.max_rad + 0.5;
    }
    CHECK(validate_limits(tree, all_high).size() == kJointCount);
}

TEST_CASE("tree JSON round-trips exactly") {
    const KinematicTree tree = build_default_exoskeleton();
    const std::string text = tree_to_json_text(tree);
    const KinematicTree back = tree_from_json_text(text);

    CHECK(back.name == tree.name);
    CHECK(tree_to_json_text(back) == text);  // byte-identical re-serialization
    for (Side side : {Side::Left, Side::Right}) {
        for (int i = 0; i < kJointsPerLeg; ++i) {
            const JointSpec& a = tree.chain(side)[i];
            const JointSpec& b = back.chain(side)[i];
            CHECK(a.axis == b.axis);
            CHECK(a.offset == b.offset);
            CHECK(a.limits.min_rad == b.limits.min_rad);
            CHECK(a.limits.max_rad == b.limits.max_rad);
        }
    }
    CHECK(tree.base_pose.translation == back.base_pose.translation);
    CHECK(tree.base_pose.rotation.m == back.base_pose.rotation.m);
}

TEST_CASE("tree JSON rejects malformed documents") {
    const KinematicTree tree = build_default_exoskeleton();
    nlohmann::json doc = tree_to_json(tree);

    SUBCASE("unknown slot name") {
        doc["leftChain"][0]["slot"] = "hip_circumduction";
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("non-unit axis") {
        doc["leftChain"][2]["axis"] = {0, 0, 2};
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("inverted limits") {
        doc["rightChain"][3]["limits"] = {1.0, -1.0};
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("broken mirror symmetry") {
        doc["leftChain"][0]["offset"] = {0, 0.12, 0.01};
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("non-rotation base pose") {
        doc["basePose"]["rotation"][0] = {2, 0, 0};
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("missing field") {
        doc.erase("footOffset");
        CHECK_THROWS_AS(tree_from_json(doc), std::invalid_argument);
    }
    SUBCASE("not json at all") {
        CHECK_THROWS_AS(tree_from_json_text("pelvis"), std::invalid_argument);
    }
}
