"""12-DOF lower-extremity exoskeleton kinematics.

Thin wrapper around the C++ core: forward kinematics on exponential-map
transform chains, damped-least-squares inverse kinematics, gait trajectory
playback and scene export. Angles are radians and positions meters unless a
function says otherwise; scene documents use centimeters.
"""

from ._exokin import (
    FramePoses,
    GaitRoundtripResult,
    GaitTrajectory,
    IkConfig,
    IkResult,
    IkStatus,
    JointSlot,
    KinematicTree,
    Side,
    Transform,
    __version__,
    build_default_exoskeleton,
    bundled_gait,
    expand_to_configuration,
    foot_pose,
    forward_kinematics,
    geometric_jacobian,
    joint_names,
    parse_gait_csv,
    rodrigues,
    rotation_log,
    run_gait_roundtrip,
    scene_sequence_json,
    skew,
    solve_ik,
    tree_from_json,
    validate_limits,
)

__all__ = [
    "FramePoses",
    "GaitRoundtripResult",
    "GaitTrajectory",
    "IkConfig",
    "IkResult",
    "IkStatus",
    "JointSlot",
    "KinematicTree",
    "Side",
    "Transform",
    "__version__",
    "build_default_exoskeleton",
    "bundled_gait",
    "expand_to_configuration",
    "foot_pose",
    "forward_kinematics",
    "geometric_jacobian",
    "joint_names",
    "parse_gait_csv",
    "rodrigues",
    "rotation_log",
    "run_gait_roundtrip",
    "scene_sequence_json",
    "skew",
    "solve_ik",
    "tree_from_json",
    "validate_limits",
]
