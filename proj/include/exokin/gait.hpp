#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exokin/tree.hpp"

namespace exokin {

/// One row of a gait table: fraction of the gait cycle plus the three
/// sagittal joint angles, degrees (file convention).
struct GaitSample {
    double phase;  // in [0, 1)
    double hip_flexion_deg;
    double knee_flexion_deg;
    double ankle_flexion_deg;
};

struct SagittalAngles {
    double hip_deg;
    double knee_deg;
    double ankle_deg;
};

enum class GaitInterpolation {
    CatmullRom,  // periodic cubic, C1 across the cycle wrap
    Linear,      // debugging aid
};

class GaitParseError : public std::runtime_error {
public:
    GaitParseError(const std::string& message, int line)
        : std::runtime_error(message + " at line " + std::to_string(line)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Periodic time series of sagittal joint angles over one gait cycle.
class GaitTrajectory {
public:
    /// Requires >= 4 samples with strictly increasing phase in [0, 1).
    GaitTrajectory(std::vector<GaitSample> samples, std::string source_label);

    const std::vector<GaitSample>& samples() const { return samples_; }
    const std::string& source_label() const { return source_label_; }

    /// Interpolated angles at any phase (wrapped mod 1). Catmull-Rom is
    /// exact at the knots and C1 everywhere, including across the wrap.
    SagittalAngles sample(double phase,
                          GaitInterpolation mode = GaitInterpolation::CatmullRom) const;

private:
    std::vector<GaitSample> samples_;
    std::string source_label_;
};

/// Parses the gait CSV format:
///   header  phase,hip_flexion_deg,knee_flexion_deg,ankle_flexion_deg
///   comment lines start with '#'
///   rows sorted by phase; a final row at phase 1.0 is dropped as the
///   periodic duplicate of phase 0.
/// Throws GaitParseError naming the offending line.
GaitTrajectory parse_gait_csv(std::string_view text, std::string source_label = {});

/// Emits the same CSV format, values at 6 significant digits.
std::string write_gait_csv(const GaitTrajectory& trajectory);

/// Raw text of the dataset shipped with the library.
std::string_view bundled_gait_csv();

/// The shipped dataset, parsed once.
const GaitTrajectory& bundled_gait();

class LimitError : public std::runtime_error {
public:
    LimitError(std::string message, std::vector<LimitViolation> violations)
        : std::runtime_error(std::move(message)), violations_(std::move(violations)) {}
    const std::vector<LimitViolation>& violations() const { return violations_; }

private:
    std::vector<LimitViolation> violations_;
};

/// Full 12-DOF configuration at a gait phase: the right leg tracks the
/// trajectory at `phase`, the left leg at `phase + 0.5` (contralateral
/// half-cycle shift), non-sagittal joints are zero, degrees converted to
/// radians. Throws LimitError if the result violates the tree's limits.
JointConfiguration expand_to_configuration(const KinematicTree& tree,
                                           const GaitTrajectory& trajectory, double phase);

}  // namespace exokin
