#include "exokin/ik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace exokin {

void IkConfig::validate() const {
    if (max_iterations < 1) throw std::invalid_argument("ik config: max_iterations must be >= 1");
    if (!(position_tolerance > 0) || !(orientation_tolerance > 0)) {
        throw std::invalid_argument("ik config: tolerances must be > 0");
    }
    if (!(damping >= 0)) throw std::invalid_argument("ik config: damping must be >= 0");
    if (!(step_scale > 0) || step_scale > 1.0) {
        throw std::invalid_argument("ik config: step_scale must be in (0, 1]");
    }
    if (!(fd_step > 0)) throw std::invalid_argument("ik config: fd_step must be > 0");
}

const char* to_string(IkStatus status) {
    switch (status) {
        case IkStatus::Converged: return "converged";
        case IkStatus::LimitClampedConverged: return "converged-at-limit";
        case IkStatus::MaxIterations: return "max-iterations";
        case IkStatus::Diverged: return "diverged";
    }
    return "?";
}

PoseError pose_error(const Transform& current, const Transform& target) {
    PoseError e;
    e.position = target.translation - current.translation;
    // Residual rotation in the current frame, re-expressed in the world frame.
    const Vector3 local = rotation_log(current.rotation.transposed() * target.rotation);
    e.orientation = current.rotation * local;
    return e;
}

Matrix6 geometric_jacobian(const KinematicTree& tree, Side side, const Vector6& q) {
    const LegFrames frames = leg_frames(tree, side, q);
    const Vector3 p_foot = frames.foot.translation;
    const auto& chain = tree.chain(side);

    Matrix6 jac;
    for (int k = 0; k < kJointsPerLeg; ++k) {
        // The joint rotates about its own axis, so R_k a_k == R_parent a_k.
        const Vector3 z = frames.joints[k].rotation * chain[k].axis;
        jac.block<3, 1>(0, k) = z.cross(p_foot - frames.joints[k].translation);
        jac.block<3, 1>(3, k) = z;
    }
    return jac;
}

Matrix6 finite_difference_jacobian(const KinematicTree& tree, Side side,
                                   const Vector6& q, double h) {
    Matrix6 jac;
    for (int k = 0; k < kJointsPerLeg; ++k) {
        Vector6 qp = q, qm = q;
        qp[k] += h;
        qm[k] -= h;
        const Transform tp = leg_frames(tree, side, qp).foot;
        const Transform tm = leg_frames(tree, side, qm).foot;
        jac.block<3, 1>(0, k) = (tp.translation - tm.translation) / (2.0 * h);
        // World-frame angular increment from tm to tp.
        const Vector3 w = rotation_log(tp.rotation * tm.rotation.transposed());
        jac.block<3, 1>(3, k) = w / (2.0 * h);
    }
    return jac;
}

namespace {

Vector6 clamp_to_limits(const std::array<JointSpec, kJointsPerLeg>& chain, Vector6 q) {
    for (int i = 0; i < kJointsPerLeg; ++i) {
        q[i] = std::clamp(q[i], chain[i].limits.min_rad, chain[i].limits.max_rad);
    }
    return q;
}

bool on_any_limit(const std::array<JointSpec, kJointsPerLeg>& chain, const Vector6& q) {
    for (int i = 0; i < kJointsPerLeg; ++i) {
        if (q[i] <= chain[i].limits.min_rad || q[i] >= chain[i].limits.max_rad) return true;
    }
    return false;
}

}  // namespace

IkResult solve_ik(const KinematicTree& tree, Side side, const Transform& target,
                  const Vector6& q0, const IkConfig& config) {
    config.validate();
    if (!q0.allFinite() || !target.rotation.m.allFinite() ||
        !target.translation.allFinite()) {
        throw std::invalid_argument("solve_ik: non-finite input");
    }

    const auto& chain = tree.chain(side);
    constexpr int kDivergenceRunLength = 10;

    IkResult result;
    result.angles = q0;
    double previous_error = std::numeric_limits<double>::infinity();
    int growth_run = 0;

    for (int iter = 0; iter <= config.max_iterations; ++iter) {
        const Transform current = leg_frames(tree, side, result.angles).foot;
        const PoseError err = pose_error(current, target);
        result.final_error = err;
        result.iterations = iter;

        if (err.position_norm() <= config.position_tolerance &&
            err.orientation_norm() <= config.orientation_tolerance) {
            result.status = on_any_limit(chain, result.angles)
                                ? IkStatus::LimitClampedConverged
                                : IkStatus::Converged;
            return result;
        }
        if (iter == config.max_iterations) break;

        const double error_norm = std::hypot(err.position_norm(), err.orientation_norm());
        growth_run = error_norm > previous_error ? growth_run + 1 : 0;
        if (growth_run >= kDivergenceRunLength) {
            result.status = IkStatus::Diverged;
            return result;
        }
        previous_error = error_norm;

        const Matrix6 jac = config.jacobian == IkConfig::Jacobian::Geometric
                                ? geometric_jacobian(tree, side, result.angles)
                                : finite_difference_jacobian(tree, side, result.angles,
                                                             config.fd_step);
        Vector6 stacked;
        stacked << err.position, err.orientation;

        Vector6 step;
        if (config.update == IkConfig::Update::DampedLeastSquares) {
            const Matrix6 normal =
                jac * jac.transpose() + config.damping * config.damping * Matrix6::Identity();
            step = jac.transpose() * normal.llt().solve(stacked);
        } else {
            step = jac.transpose() * stacked;
        }
        if (!step.allFinite()) {
            result.status = IkStatus::Diverged;
            return result;
        }
        result.angles = clamp_to_limits(chain, result.angles + config.step_scale * step);
    }

    result.status = IkStatus::MaxIterations;
    return result;
}

}  // namespace exokin
