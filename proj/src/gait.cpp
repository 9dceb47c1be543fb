#include "exokin/gait.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "exokin/bundled_gait_data.hpp"

namespace exokin {

GaitTrajectory::GaitTrajectory(std::vector<GaitSample> samples, std::string source_label)
    : samples_(std::move(samples)), source_label_(std::move(source_label)) {
    if (samples_.size() < 4) {
        throw std::invalid_argument("gait trajectory needs at least 4 samples");
    }
    double previous = -1.0;
    for (const GaitSample& s : samples_) {
        if (!(s.phase >= 0.0 && s.phase < 1.0)) {
            throw std::invalid_argument("gait trajectory phase outside [0, 1)");
        }
        if (!(s.phase > previous)) {
            throw std::invalid_argument("gait trajectory phases must be strictly increasing");
        }
        if (!std::isfinite(s.hip_flexion_deg) || !std::isfinite(s.knee_flexion_deg) ||
            !std::isfinite(s.ankle_flexion_deg)) {
            throw std::invalid_argument("gait trajectory contains non-finite angles");
        }
        previous = s.phase;
    }
}

namespace {

double wrap_phase(double phase) {
    double p = std::fmod(phase, 1.0);
    return p < 0 ? p + 1.0 : p;
}

double channel(const GaitSample& s, int c) {
    switch (c) {
        case 0: return s.hip_flexion_deg;
        case 1: return s.knee_flexion_deg;
        default: return s.ankle_flexion_deg;
    }
}

}  // namespace

SagittalAngles GaitTrajectory::sample(double phase, GaitInterpolation mode) const {
    const double t = wrap_phase(phase);
    const int n = static_cast<int>(samples_.size());

    // Segment i covers [phase_i, phase_{i+1}); t below the first knot falls
    // in the wrap segment starting at the last knot.
    int seg = n - 1;
    for (int i = 0; i < n; ++i) {
        if (samples_[i].phase > t) {
            seg = i - 1;
            break;
        }
    }
    if (seg < 0) seg = n - 1;

    // Knot phase with periodic continuation: index j shifted by whole cycles.
    auto knot_x = [&](int j) {
        const int wrapped = ((j % n) + n) % n;
        const int cycles = (j - wrapped) / n;
        return samples_[wrapped].phase + cycles;
    };
    auto knot_y = [&](int j, int c) { return channel(samples_[((j % n) + n) % n], c); };

    const double x0 = knot_x(seg);
    const double x1 = knot_x(seg + 1);
    const double tt = t < x0 ? t + 1.0 : t;  // move into the wrap segment's range
    const double h = x1 - x0;
    const double s = (tt - x0) / h;

    double out[3];
    for (int c = 0; c < 3; ++c) {
        const double y0 = knot_y(seg, c);
        const double y1 = knot_y(seg + 1, c);
        if (mode == GaitInterpolation::Linear) {
            out[c] = y0 + s * (y1 - y0);
            continue;
        }
        // Cubic Hermite with three-point tangents (Catmull-Rom on
        // nonuniform knots), periodic indexing.
        const double m0 = (y1 - knot_y(seg - 1, c)) / (x1 - knot_x(seg - 1));
        const double m1 = (knot_y(seg + 2, c) - y0) / (knot_x(seg + 2) - x0);
        const double s2 = s * s;
        const double s3 = s2 * s;
        out[c] = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 +
                 (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * m1;
    }
    return SagittalAngles{out[0], out[1], out[2]};
}

namespace {

double parse_cell(std::string_view cell, int line) {
    double value = 0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw GaitParseError("non-numeric cell '" + std::string(cell) + "'", line);
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    size_t start = 0;
    while (true) {
        const size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            return cells;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

constexpr std::string_view kGaitHeader =
    "phase,hip_flexion_deg,knee_flexion_deg,ankle_flexion_deg";

}  // namespace

GaitTrajectory parse_gait_csv(std::string_view text, std::string source_label) {
    std::vector<GaitSample> rows;
    bool header_seen = false;
    int line_number = 0;

    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_number;

        line = strip(line);
        if (line.empty() || line.front() == '#') continue;

        if (!header_seen) {
            if (line != kGaitHeader) {
                throw GaitParseError("malformed header, expected '" +
                                         std::string(kGaitHeader) + "'",
                                     line_number);
            }
            header_seen = true;
            continue;
        }

        const auto cells = split_csv(line);
        if (cells.size() != 4) {
            throw GaitParseError("expected 4 columns, got " + std::to_string(cells.size()),
                                 line_number);
        }
        GaitSample s;
        s.phase = parse_cell(strip(cells[0]), line_number);
        s.hip_flexion_deg = parse_cell(strip(cells[1]), line_number);
        s.knee_flexion_deg = parse_cell(strip(cells[2]), line_number);
        s.ankle_flexion_deg = parse_cell(strip(cells[3]), line_number);

        if (!rows.empty()) {
            if (s.phase == rows.back().phase) {
                throw GaitParseError("duplicate phase", line_number);
            }
            if (s.phase < rows.back().phase) {
                throw GaitParseError("decreasing phase", line_number);
            }
        }
        if (s.phase == 1.0) continue;  // periodic duplicate of phase 0
        if (s.phase < 0.0 || s.phase > 1.0) {
            throw GaitParseError("phase outside [0, 1]", line_number);
        }
        rows.push_back(s);
    }

    if (!header_seen) {
        throw GaitParseError("missing header", line_number);
    }
    if (rows.size() < 4) {
        throw GaitParseError("fewer than 4 data rows", line_number);
    }
    return GaitTrajectory(std::move(rows), std::move(source_label));
}

std::string write_gait_csv(const GaitTrajectory& trajectory) {
    std::ostringstream out;
    if (!trajectory.source_label().empty()) {
        out << "# source: " << trajectory.source_label() << "\n";
    }
    out << kGaitHeader << "\n";
    char buf[128];
    for (const GaitSample& s : trajectory.samples()) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.6g,%.6g\n", s.phase,
                      s.hip_flexion_deg, s.knee_flexion_deg, s.ankle_flexion_deg);
        out << buf;
    }
    return out.str();
}

std::string_view bundled_gait_csv() { return detail::kBundledGaitCsv; }

const GaitTrajectory& bundled_gait() {
    static const GaitTrajectory trajectory =
        parse_gait_csv(bundled_gait_csv(), "bundled normative gait");
    return trajectory;
}

JointConfiguration expand_to_configuration(const KinematicTree& tree,
                                           const GaitTrajectory& trajectory,
                                           double phase) {
    if (!std::isfinite(phase)) {
        throw std::invalid_argument("expand_to_configuration: non-finite phase");
    }
    constexpr double kDegToRad = M_PI / 180.0;
    const SagittalAngles right = trajectory.sample(phase);
    const SagittalAngles left = trajectory.sample(phase + 0.5);

    JointConfiguration q;
    q[{Side::Right, JointSlot::HipFlexion}] = right.hip_deg * kDegToRad;
    q[{Side::Right, JointSlot::KneeFlexion}] = right.knee_deg * kDegToRad;
    q[{Side::Right, JointSlot::AnkleFlexion}] = right.ankle_deg * kDegToRad;
    q[{Side::Left, JointSlot::HipFlexion}] = left.hip_deg * kDegToRad;
    q[{Side::Left, JointSlot::KneeFlexion}] = left.knee_deg * kDegToRad;
    q[{Side::Left, JointSlot::AnkleFlexion}] = left.ankle_deg * kDegToRad;

    const std::vector<LimitViolation> violations = validate_limits(tree, q);
    if (!violations.empty()) {
        std::ostringstream msg;
        msg << "gait configuration at phase " << wrap_phase(phase)
            << " violates joint limits:";
        for (const LimitViolation& v : violations) {
            msg << " " << joint_name(v.id) << " by " << v.excess_rad << " rad;";
        }
        throw LimitError(msg.str(), violations);
    }
    return q;
}

}  // namespace exokin
