#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "exokin/gait.hpp"
#include "exokin/ik.hpp"
#include "exokin/roundtrip.hpp"
#include "exokin/scene.hpp"
#include "exokin/tree.hpp"
#include "exokin/tree_json.hpp"

namespace py = pybind11;
using namespace exokin;

namespace {

JointConfiguration config_from_array(const Eigen::VectorXd& angles) {
    if (angles.size() != kJointCount) {
        throw std::invalid_argument("expected 12 joint angles (radians)");
    }
    JointConfiguration q;
    for (int i = 0; i < kJointCount; ++i) q.angles_rad[i] = angles[i];
    return q;
}

Eigen::VectorXd config_to_array(const JointConfiguration& q) {
    Eigen::VectorXd out(kJointCount);
    for (int i = 0; i < kJointCount; ++i) out[i] = q.angles_rad[i];
    return out;
}

}  // namespace

PYBIND11_MODULE(_exokin, m) {
    m.doc() = "12-DOF lower-extremity exoskeleton kinematics: forward kinematics "
              "on exponential-map transform chains, damped-least-squares inverse "
              "kinematics, gait trajectory playback and scene export.";

    py::enum_<Side>(m, "Side")
        .value("LEFT", Side::Left)
        .value("RIGHT", Side::Right);

    py::enum_<JointSlot>(m, "JointSlot")
        .value("HIP_FLEXION", JointSlot::HipFlexion)
        .value("HIP_ABDUCTION", JointSlot::HipAbduction)
        .value("HIP_ROTATION", JointSlot::HipRotation)
        .value("KNEE_FLEXION", JointSlot::KneeFlexion)
        .value("ANKLE_FLEXION", JointSlot::AnkleFlexion)
        .value("ANKLE_ABDUCTION", JointSlot::AnkleAbduction);

    py::enum_<IkStatus>(m, "IkStatus")
        .value("CONVERGED", IkStatus::Converged)
        .value("LIMIT_CLAMPED_CONVERGED", IkStatus::LimitClampedConverged)
        .value("MAX_ITERATIONS", IkStatus::MaxIterations)
        .value("DIVERGED", IkStatus::Diverged);

    m.def("joint_names", [] {
        std::vector<std::string> names;
        for (int i = 0; i < kJointCount; ++i) names.push_back(joint_name(joint_from_index(i)));
        return names;
    }, "The 12 joint names in configuration-vector order (left chain, then right).");

    py::class_<Transform>(m, "Transform")
        .def(py::init([](const Matrix3& rotation, const Vector3& translation) {
                 Rotation r{rotation};
                 if (!r.is_valid()) throw std::invalid_argument("not a rotation matrix");
                 return Transform{r, translation};
             }),
             py::arg("rotation"), py::arg("translation"))
        .def_static("identity", &Transform::identity)
        .def_property_readonly("rotation",
                               [](const Transform& t) -> Matrix3 { return t.rotation.m; })
        .def_property_readonly("translation",
                               [](const Transform& t) -> Vector3 { return t.translation; })
        .def("inverse", &Transform::inverse)
        .def("__mul__",
             [](const Transform& a, const Transform& b) { return a * b; })
        .def("apply", [](const Transform& t, const Vector3& p) { return t * p; },
             py::arg("point"))
        .def("__repr__", [](const Transform& t) {
            std::ostringstream out;
            out << "Transform(t=[" << t.translation.transpose() << "])";
            return out.str();
        });

    m.def("skew", &skew, py::arg("a"), "Cross-product matrix: skew(a) @ b == a x b.");
    m.def("rodrigues",
          [](const Vector3& axis, double angle) { return rodrigues(axis, angle).m; },
          py::arg("axis"), py::arg("angle"),
          "Rotation about a unit axis by an angle in radians.");
    m.def("rotation_log",
          [](const Matrix3& rotation) {
              Rotation r{rotation};
              if (!r.is_valid()) throw std::invalid_argument("not a rotation matrix");
              return rotation_log(r);
          },
          py::arg("rotation"), "Axis*angle vector of a rotation matrix, |w| in [0, pi].");

    py::class_<KinematicTree>(m, "KinematicTree")
        .def_readonly("name", &KinematicTree::name)
        .def("to_json", &tree_to_json_text)
        .def("validate", &KinematicTree::validate)
        .def("joint_limits", [](const KinematicTree& tree) {
            std::vector<std::pair<double, double>> limits;
            for (int i = 0; i < kJointCount; ++i) {
                const auto& lim = tree.spec(joint_from_index(i)).limits;
                limits.emplace_back(lim.min_rad, lim.max_rad);
            }
            return limits;
        }, "Per-joint (min, max) radians in configuration-vector order.");

    m.def("build_default_exoskeleton", &build_default_exoskeleton);
    m.def("tree_from_json", &tree_from_json_text, py::arg("text"));

    py::class_<FramePoses>(m, "FramePoses")
        .def("joint",
             [](const FramePoses& poses, Side side, JointSlot slot) {
                 return poses.joint(JointId{side, slot});
             },
             py::arg("side"), py::arg("slot"))
        .def("foot", &FramePoses::foot, py::arg("side"));

    m.def("forward_kinematics",
          [](const KinematicTree& tree, const Eigen::VectorXd& angles) {
              return forward_kinematics(tree, config_from_array(angles));
          },
          py::arg("tree"), py::arg("angles_rad"),
          "World pose of every joint frame and both feet; 12 angles, radians.");
    m.def("foot_pose",
          [](const KinematicTree& tree, const Eigen::VectorXd& angles, Side side) {
              return foot_pose(tree, config_from_array(angles), side);
          },
          py::arg("tree"), py::arg("angles_rad"), py::arg("side"));
    m.def("validate_limits",
          [](const KinematicTree& tree, const Eigen::VectorXd& angles) {
              std::vector<std::tuple<std::string, double, double>> out;
              for (const LimitViolation& v :
                   validate_limits(tree, config_from_array(angles))) {
                  out.emplace_back(joint_name(v.id), v.angle_rad, v.excess_rad);
              }
              return out;
          },
          py::arg("tree"), py::arg("angles_rad"),
          "List of (joint, angle, excess) for angles outside the limits.");

    py::class_<IkConfig>(m, "IkConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &IkConfig::max_iterations)
        .def_readwrite("position_tolerance", &IkConfig::position_tolerance)
        .def_readwrite("orientation_tolerance", &IkConfig::orientation_tolerance)
        .def_readwrite("damping", &IkConfig::damping)
        .def_readwrite("step_scale", &IkConfig::step_scale)
        .def_readwrite("fd_step", &IkConfig::fd_step);

    py::class_<IkResult>(m, "IkResult")
        .def_property_readonly("angles",
                               [](const IkResult& r) -> Vector6 { return r.angles; })
        .def_readonly("iterations", &IkResult::iterations)
        .def_readonly("status", &IkResult::status)
        .def_property_readonly("position_error",
                               [](const IkResult& r) { return r.final_error.position_norm(); })
        .def_property_readonly("orientation_error",
                               [](const IkResult& r) { return r.final_error.orientation_norm(); })
        .def_property_readonly("converged", &IkResult::converged)
        .def("__repr__", [](const IkResult& r) {
            std::ostringstream out;
            out << "IkResult(" << to_string(r.status) << ", iterations=" << r.iterations
                << ")";
            return out.str();
        });

    m.def("geometric_jacobian", &geometric_jacobian, py::arg("tree"), py::arg("side"),
          py::arg("q"), "6x6 foot Jacobian: linear rows 0-2, angular rows 3-5, world frame.");
    m.def("solve_ik", &solve_ik, py::arg("tree"), py::arg("side"), py::arg("target"),
          py::arg("q0"), py::arg("config") = IkConfig{},
          "Iterative inverse kinematics for one leg's foot pose.");

    py::class_<GaitTrajectory>(m, "GaitTrajectory")
        .def_property_readonly("source_label", &GaitTrajectory::source_label)
        .def_property_readonly("num_samples",
                               [](const GaitTrajectory& t) { return t.samples().size(); })
        .def("sample",
             [](const GaitTrajectory& t, double phase) {
                 const SagittalAngles a = t.sample(phase);
                 return std::make_tuple(a.hip_deg, a.knee_deg, a.ankle_deg);
             },
             py::arg("phase"), "(hip, knee, ankle) degrees at a phase, wrapped mod 1.")
        .def("to_csv", &write_gait_csv);

    m.def("parse_gait_csv", &parse_gait_csv, py::arg("text"), py::arg("source_label") = "");
    m.def("bundled_gait", &bundled_gait, py::return_value_policy::reference,
          "The gait dataset shipped with the library.");
    m.def("expand_to_configuration",
          [](const KinematicTree& tree, const GaitTrajectory& traj, double phase) {
              return config_to_array(expand_to_configuration(tree, traj, phase));
          },
          py::arg("tree"), py::arg("trajectory"), py::arg("phase"),
          "12 joint angles (radians) at a gait phase; left leg shifted half a cycle.");

    m.def("scene_sequence_json",
          [](const KinematicTree& tree, const GaitTrajectory& traj, int frames) {
              return scene_to_json(scene_sequence(tree, traj, frames)).dump(2);
          },
          py::arg("tree"), py::arg("trajectory"), py::arg("frames"),
          "Scene sequence document (JSON text), frames at phases k/n.");

    py::class_<GaitRoundtripResult>(m, "GaitRoundtripResult")
        .def_readonly("frames_total", &GaitRoundtripResult::frames_total)
        .def_readonly("frames_converged", &GaitRoundtripResult::frames_converged)
        .def_readonly("max_joint_error_deg", &GaitRoundtripResult::max_joint_error_deg)
        .def_readonly("max_foot_residual_m", &GaitRoundtripResult::max_foot_residual_m)
        .def_property_readonly("rms_joint_error_deg",
                               [](const GaitRoundtripResult& r) {
                                   return std::vector<double>(r.rms_joint_error_deg.begin(),
                                                              r.rms_joint_error_deg.end());
                               })
        .def_property_readonly("all_converged", &GaitRoundtripResult::all_converged)
        .def("comparison_csv",
             [](const GaitRoundtripResult& r) { return emit_comparison_csv(r.series); });

    m.def("run_gait_roundtrip",
          [](const KinematicTree& tree, const GaitTrajectory& traj, int frames,
             const IkConfig& config) {
              GaitRoundtripOptions options;
              options.frames = frames;
              options.ik = config;
              return run_gait_roundtrip(tree, traj, options);
          },
          py::arg("tree"), py::arg("trajectory"), py::arg("frames") = 50,
          py::arg("config") = IkConfig{},
          "FK-generate foot targets from the gait table, re-solve with warm-started "
          "IK, report measured-vs-recovered errors.");

#ifdef EXOKIN_VERSION
#define EXOKIN_STR2(x) #x
#define EXOKIN_STR(x) EXOKIN_STR2(x)
    m.attr("__version__") = EXOKIN_STR(EXOKIN_VERSION);
#else
    m.attr("__version__") = "dev";
#endif
}
