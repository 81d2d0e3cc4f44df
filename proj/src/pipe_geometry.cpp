#include "pipeclimb/pipe_geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pipeclimb/error.hpp"

namespace pipeclimb {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

std::string bad_segment(std::size_t index, const std::string& what) {
    std::ostringstream msg;
    msg << "segment " << index << ": " << what;
    return msg.str();
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

// "NPS 6" -> "6", "sch40" -> "40", "Schedule 40" -> "40".
std::string normalize_key(const std::string& raw, std::initializer_list<const char*> prefixes) {
    std::string s = upper(raw);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    for (const char* p : prefixes) {
        const std::string prefix(p);
        if (s.rfind(prefix, 0) == 0 && s.size() > prefix.size()) {
            s.erase(0, prefix.size());
            break;
        }
    }
    return s;
}

std::string normalize_nps(const std::string& raw) { return normalize_key(raw, {"NPS"}); }

std::string normalize_schedule(const std::string& raw) {
    return normalize_key(raw, {"SCHEDULE", "SCH.", "SCH"});
}

}  // namespace

extern const char* const kBuiltinPipeDimensions;

double arc_length(const SegmentSpec& segment) {
    return std::visit(
        [](const auto& seg) -> double {
            using T = std::decay_t<decltype(seg)>;
            if constexpr (std::is_same_v<T, Straight>) {
                return seg.length_mm;
            } else {
                return seg.bend_radius_mm * seg.sweep_deg * kDegToRad;
            }
        },
        segment);
}

PipeNetwork build_network(std::vector<SegmentSpec> segments, double inner_radius_mm,
                          const StartPose& start) {
    if (segments.empty()) {
        throw Error(ErrorCode::EmptyNetwork, "pipe network needs at least one segment");
    }
    if (!(inner_radius_mm > 0.0) || !std::isfinite(inner_radius_mm)) {
        throw Error(ErrorCode::InvalidConfig, "inner radius must be > 0");
    }
    const double tangent_norm = start.tangent.norm();
    if (!(tangent_norm > 0.0) || !std::isfinite(tangent_norm)) {
        throw Error(ErrorCode::InvalidConfig, "start tangent must be non-zero");
    }
    const Vec3 t0 = start.tangent / tangent_norm;
    Vec3 ref0 = start.reference - start.reference.dot(t0) * t0;
    if (!(ref0.norm() > 1e-9)) {
        throw Error(ErrorCode::InvalidConfig, "start reference must not be parallel to tangent");
    }
    ref0.normalize();

    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (const auto* st = std::get_if<Straight>(&segments[i])) {
            if (!(st->length_mm > 0.0) || !std::isfinite(st->length_mm)) {
                throw Error(ErrorCode::BadSegment, bad_segment(i, "straight length must be > 0"));
            }
        } else {
            const auto& b = std::get<Bend>(segments[i]);
            if (!(b.bend_radius_mm > inner_radius_mm) || !std::isfinite(b.bend_radius_mm)) {
                throw Error(ErrorCode::BadSegment,
                            bad_segment(i, "bend radius must exceed the pipe inner radius"));
            }
            if (!(b.sweep_deg > 0.0 && b.sweep_deg <= 180.0)) {
                throw Error(ErrorCode::BadSegment, bad_segment(i, "sweep must be in (0, 180]"));
            }
            if (!std::isfinite(b.roll_deg)) {
                throw Error(ErrorCode::BadSegment, bad_segment(i, "roll must be finite"));
            }
        }
    }

    PipeNetwork net;
    net.inner_radius_mm_ = inner_radius_mm;
    net.start_ = start;
    net.cumulative_.reserve(segments.size());
    net.entry_frames_.reserve(segments.size());

    PipeNetwork::Frame frame{start.position, t0, ref0};
    double total = 0.0;
    for (const auto& seg : segments) {
        net.entry_frames_.push_back(frame);
        total += arc_length(seg);
        net.cumulative_.push_back(total);

        if (const auto* st = std::get_if<Straight>(&seg)) {
            frame.position += st->length_mm * frame.tangent;
        } else {
            const auto& b = std::get<Bend>(seg);
            const double roll = b.roll_deg * kDegToRad;
            const Vec3 out0 = std::cos(roll) * frame.reference +
                              std::sin(roll) * frame.tangent.cross(frame.reference);
            const double sweep = b.sweep_deg * kDegToRad;
            const Vec3 centre = frame.position - b.bend_radius_mm * out0;
            const Vec3 out1 = std::cos(sweep) * out0 + std::sin(sweep) * frame.tangent;
            const Vec3 tan1 = -std::sin(sweep) * out0 + std::cos(sweep) * frame.tangent;
            frame.position = centre + b.bend_radius_mm * out1;
            frame.tangent = tan1.normalized();
            frame.reference = (out1 - out1.dot(frame.tangent) * frame.tangent).normalized();
        }
    }
    net.segments_ = std::move(segments);
    return net;
}

std::size_t PipeNetwork::segment_at(double s) const {
    if (!(s >= 0.0 && s <= total_length())) {
        std::ostringstream msg;
        msg << "arc length " << s << " outside [0, " << total_length() << "]";
        throw Error(ErrorCode::OutOfRange, msg.str());
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);
}

CenterlinePose PipeNetwork::pose_at(double s) const {
    const std::size_t idx = segment_at(s);
    const Frame& f = entry_frames_[idx];
    const double local = s - segment_start(idx);

    CenterlinePose pose;
    pose.segment_index = idx;
    if (std::holds_alternative<Straight>(segments_[idx])) {
        pose.position = f.position + local * f.tangent;
        pose.tangent = f.tangent;
        return pose;
    }

    const auto& b = std::get<Bend>(segments_[idx]);
    const double roll = b.roll_deg * kDegToRad;
    const Vec3 out0 = std::cos(roll) * f.reference + std::sin(roll) * f.tangent.cross(f.reference);
    const double angle = local / b.bend_radius_mm;
    const Vec3 centre = f.position - b.bend_radius_mm * out0;
    const Vec3 outward = std::cos(angle) * out0 + std::sin(angle) * f.tangent;
    pose.position = centre + b.bend_radius_mm * outward;
    pose.tangent = (-std::sin(angle) * out0 + std::cos(angle) * f.tangent).normalized();
    pose.bend_outward = outward.normalized();
    pose.curvature = 1.0 / b.bend_radius_mm;
    pose.bend_radius_mm = b.bend_radius_mm;
    return pose;
}

DimensionTable DimensionTable::parse(const std::string& text) {
    DimensionTable table;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string nps;
        if (!(fields >> nps)) continue;
        std::string schedule;
        PipeDimensions dims;
        if (!(fields >> schedule >> dims.outer_diameter_mm >> dims.wall_thickness_mm) ||
            !(dims.outer_diameter_mm > 2.0 * dims.wall_thickness_mm) ||
            !(dims.wall_thickness_mm > 0.0)) {
            std::ostringstream msg;
            msg << "dimension table line " << line_no << " is malformed";
            throw Error(ErrorCode::ParseError, msg.str());
        }
        table.rows_[{normalize_nps(nps), normalize_schedule(schedule)}] = dims;
    }
    return table;
}

DimensionTable DimensionTable::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open dimension table " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse(text.str());
}

const DimensionTable& DimensionTable::builtin() {
    static const DimensionTable table = parse(kBuiltinPipeDimensions);
    return table;
}

PipeDimensions DimensionTable::lookup(const std::string& nps, const std::string& schedule) const {
    const auto it = rows_.find({normalize_nps(nps), normalize_schedule(schedule)});
    if (it == rows_.end()) {
        throw Error(ErrorCode::UnknownSize, "no dimensions for NPS " + nps + " schedule " + schedule);
    }
    return it->second;
}

double pipe_inner_radius(const std::string& nps, const std::string& schedule) {
    return DimensionTable::builtin().lookup(nps, schedule).inner_radius_mm();
}

}  // namespace pipeclimb
