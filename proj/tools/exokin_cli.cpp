// Command-line front end: forward kinematics, single-target inverse
// kinematics, gait playback scene export, and the gait IK round-trip check.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "exokin/gait.hpp"
#include "exokin/ik.hpp"
#include "exokin/roundtrip.hpp"
#include "exokin/scene.hpp"
#include "exokin/tree.hpp"
#include "exokin/tree_json.hpp"

namespace {

using namespace exokin;

constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;

// Pass thresholds for `verify`, independent of the solver tolerances so a
// loosened solver cannot make the check trivially green.
constexpr double kVerifyMaxJointErrorDeg = 0.1;
constexpr double kVerifyMaxFootResidualM = 1e-8;

constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

struct CommonOptions {
    std::string tree_path;
    std::string gait_path;
    std::string output_path;
};

KinematicTree load_tree(const CommonOptions& opts) {
    if (opts.tree_path.empty()) return build_default_exoskeleton();
    return tree_from_json_text(read_file(opts.tree_path));
}

GaitTrajectory load_gait(const CommonOptions& opts) {
    if (opts.gait_path.empty()) return bundled_gait();
    return parse_gait_csv(read_file(opts.gait_path), opts.gait_path);
}

std::string format_pose_line(const std::string& name, const Transform& pose) {
    const Vector3 rot_deg = rotation_log(pose.rotation) * kRadToDeg;
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "%-18s pos [% .6f % .6f % .6f] m   rot [% .4f % .4f % .4f] deg\n",
                  name.c_str(), pose.translation.x(), pose.translation.y(),
                  pose.translation.z(), rot_deg.x(), rot_deg.y(), rot_deg.z());
    return buf;
}

int run_fk(const CommonOptions& opts, const std::vector<double>& angles_deg) {
    if (angles_deg.size() != kJointCount) {
        std::cerr << "fk: --angles needs " << kJointCount << " comma-separated values, got "
                  << angles_deg.size() << "\n";
        return kExitUsageError;
    }
    const KinematicTree tree = load_tree(opts);
    JointConfiguration q;
    for (int i = 0; i < kJointCount; ++i) {
        if (!std::isfinite(angles_deg[i])) {
            std::cerr << "fk: non-finite angle at position " << i + 1 << "\n";
            return kExitUsageError;
        }
        q.angles_rad[i] = angles_deg[i] * kDegToRad;
    }

    const FramePoses poses = forward_kinematics(tree, q);
    std::string report;
    for (int i = 0; i < kJointCount; ++i) {
        const JointId id = joint_from_index(i);
        report += format_pose_line(joint_name(id), poses.joint(id));
    }
    report += format_pose_line("L_foot", poses.left_foot);
    report += format_pose_line("R_foot", poses.right_foot);
    std::cout << report;

    for (const LimitViolation& v : validate_limits(tree, q)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "warning: %s = %.4f rad is outside limits by %.4f rad\n",
                      joint_name(v.id).c_str(), v.angle_rad, v.excess_rad);
        std::cout << buf;
    }

    const std::string out = opts.output_path.empty() ? "fk_scene.json" : opts.output_path;
    write_file(out, scene_to_json({scene_from_poses(poses, 0.0)}).dump(2) + "\n");
    std::cout << "scene written to " << out << "\n";
    return 0;
}

int run_ik(const CommonOptions& opts, const std::string& side_name,
           const std::vector<double>& target6, const IkConfig& config) {
    if (target6.size() != 6) {
        std::cerr << "ik: --target needs x,y,z (m) and rx,ry,rz (rotation vector, deg)\n";
        return kExitUsageError;
    }
    const Side side = side_name == "L" ? Side::Left : Side::Right;
    const KinematicTree tree = load_tree(opts);

    const Vector3 position(target6[0], target6[1], target6[2]);
    const Vector3 rot_vec = Vector3(target6[3], target6[4], target6[5]) * kDegToRad;
    const double angle = rot_vec.norm();
    const Rotation rotation =
        angle > 0 ? rodrigues(rot_vec / angle, angle) : Rotation::identity();
    const Transform target{rotation, position};

    const IkResult result = solve_ik(tree, side, target, Vector6::Zero(), config);

    char buf[256];
    std::snprintf(buf, sizeof(buf), "status: %s after %d iterations\n",
                  to_string(result.status), result.iterations);
    std::cout << buf;
    std::cout << "angles (deg):";
    for (int i = 0; i < kJointsPerLeg; ++i) {
        std::snprintf(buf, sizeof(buf), " %s=%.4f",
                      to_string(static_cast<JointSlot>(i)), result.angles[i] * kRadToDeg);
        std::cout << buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "\nresidual: position %.3e m, orientation %.3e rad\n",
                  result.final_error.position_norm(),
                  result.final_error.orientation_norm());
    std::cout << buf;
    return result.converged() ? 0 : kExitDomainError;
}

int run_play(const CommonOptions& opts, int frames) {
    const KinematicTree tree = load_tree(opts);
    const GaitTrajectory gait = load_gait(opts);
    const nlohmann::json doc = scene_to_json(scene_sequence(tree, gait, frames));
    const std::string out = opts.output_path.empty() ? "scene.json" : opts.output_path;
    write_file(out, doc.dump(2) + "\n");
    std::cout << "wrote " << frames << " frames to " << out << "\n";
    return 0;
}

int run_verify(const CommonOptions& opts, int frames, const IkConfig& config) {
    const KinematicTree tree = load_tree(opts);
    const GaitTrajectory gait = load_gait(opts);

    GaitRoundtripOptions options;
    options.frames = frames;
    options.ik = config;
    const GaitRoundtripResult result = run_gait_roundtrip(tree, gait, options);

    const std::string out = opts.output_path.empty() ? "comparison.csv" : opts.output_path;
    write_file(out, emit_comparison_csv(result.series));

    char buf[128];
    for (int c = 0; c < 6; ++c) {
        std::snprintf(buf, sizeof(buf), "rms %-8s %.6f deg\n",
                      ComparisonSeries::joint_tags()[c], result.rms_joint_error_deg[c]);
        std::cout << buf;
    }
    std::snprintf(buf, sizeof(buf), "max joint error    %.6e deg\n", result.max_joint_error_deg);
    std::cout << buf;
    std::snprintf(buf, sizeof(buf), "max foot residual  %.6e m\n", result.max_foot_residual_m);
    std::cout << buf;
    std::cout << "frames converged   " << result.frames_converged << "/" << result.frames_total
              << "\n";
    std::cout << "comparison written to " << out << "\n";

    const bool pass = result.all_converged() &&
                      result.max_joint_error_deg < kVerifyMaxJointErrorDeg &&
                      result.max_foot_residual_m < kVerifyMaxFootResidualM;
    std::cout << (pass ? "verify: PASS" : "verify: FAIL") << "\n";
    return pass ? 0 : kExitDomainError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exokin - 12-DOF lower-extremity exoskeleton kinematics\n"
        "Angles on the command line are degrees; files use meters and the\n"
        "documented per-format units."};
    app.require_subcommand(1);

    CommonOptions common;
    app.add_option("--tree", common.tree_path, "Kinematic tree JSON (default: built-in model)");
    app.add_option("--gait", common.gait_path, "Gait CSV (default: bundled dataset)");
    app.add_option("-o,--output", common.output_path, "Output file path");

    IkConfig ik_config;
    app.add_option("--max-iterations", ik_config.max_iterations, "IK iteration cap");
    app.add_option("--pos-tol", ik_config.position_tolerance, "IK position tolerance, m");
    app.add_option("--ori-tol", ik_config.orientation_tolerance, "IK orientation tolerance, rad");
    app.add_option("--damping", ik_config.damping, "IK damping lambda");
    app.add_option("--step-scale", ik_config.step_scale, "IK step scale in (0,1]");
    bool jacobian_transpose = false;
    app.add_flag("--jacobian-transpose", jacobian_transpose,
                 "Use the plain Jacobian-transpose update instead of damped least squares");

    auto* fk = app.add_subcommand("fk", "Forward kinematics: print all frame poses");
    std::vector<double> angles_deg;
    fk->add_option("--angles", angles_deg, "12 joint angles, degrees: L hip-to-ankle, then R")
        ->delimiter(',')
        ->expected(1, kJointCount)
        ->required();

    auto* ik = app.add_subcommand("ik", "Inverse kinematics for one foot target");
    std::string side_name = "R";
    std::vector<double> target6;
    ik->add_option("--side", side_name, "Leg: L or R")->check(CLI::IsMember({"L", "R"}));
    ik->add_option("--target", target6, "x,y,z (m), rx,ry,rz (rotation vector, deg)")
        ->delimiter(',')
        ->expected(1, 6)
        ->required();

    auto* play = app.add_subcommand("play", "Export a gait cycle as a JSON scene sequence");
    int play_frames = 10;
    play->add_option("--frames", play_frames, "Frames per cycle")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand(
        "verify", "Recover gait joint trajectories from FK-generated foot targets via IK");
    int verify_frames = 50;
    verify->add_option("--frames", verify_frames, "Frames per cycle")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsageError;
    }

    try {
        if (jacobian_transpose) ik_config.update = IkConfig::Update::JacobianTranspose;
        if (fk->parsed()) return run_fk(common, angles_deg);
        if (ik->parsed()) return run_ik(common, side_name, target6, ik_config);
        if (play->parsed()) return run_play(common, play_frames);
        return run_verify(common, verify_frames, ik_config);
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    } catch (const GaitParseError& e) {
        std::cerr << "error: gait file: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
}
