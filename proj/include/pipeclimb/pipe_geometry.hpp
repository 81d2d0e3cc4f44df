#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pipeclimb {

using Vec3 = Eigen::Vector3d;

struct Straight {
    double length_mm = 0.0;
    bool operator==(const Straight&) const = default;
};

/// Circular elbow continuing tangentially from the previous segment.
/// roll_deg rotates the bend's outward direction about the entry tangent,
/// measured from the carried reference direction (see PipeNetwork).
struct Bend {
    double bend_radius_mm = 0.0;
    double sweep_deg = 90.0;
    double roll_deg = 0.0;
    bool operator==(const Bend&) const = default;
};

using SegmentSpec = std::variant<Straight, Bend>;

double arc_length(const SegmentSpec& segment);

/// Entry frame of the first segment. `reference` must be perpendicular to
/// `tangent`; the first bend with roll 0 has its outward direction along it.
struct StartPose {
    Vec3 position = Vec3::Zero();
    Vec3 tangent = Vec3::UnitZ();
    Vec3 reference = Vec3::UnitX();
    bool operator==(const StartPose&) const = default;
};

struct CenterlinePose {
    Vec3 position = Vec3::Zero();
    Vec3 tangent = Vec3::UnitZ();
    std::optional<Vec3> bend_outward;  // bend centre -> centerline, bends only
    double curvature = 0.0;            // 1/mm
    double bend_radius_mm = 0.0;       // 0 on straights
    std::size_t segment_index = 0;
};

class PipeNetwork {
public:
    PipeNetwork() = default;

    const std::vector<SegmentSpec>& segments() const noexcept { return segments_; }
    double inner_radius_mm() const noexcept { return inner_radius_mm_; }
    const StartPose& start() const noexcept { return start_; }

    /// Arc length at the end of each segment.
    const std::vector<double>& cumulative_lengths() const noexcept { return cumulative_; }
    double total_length() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
    double segment_start(std::size_t index) const noexcept {
        return index == 0 ? 0.0 : cumulative_[index - 1];
    }

    /// Throws OutOfRange unless 0 <= s <= total_length(). A boundary value
    /// belongs to the segment that starts there (the last segment owns the end).
    CenterlinePose pose_at(double s) const;

    std::size_t segment_at(double s) const;

    bool operator==(const PipeNetwork& other) const {
        return segments_ == other.segments_ && inner_radius_mm_ == other.inner_radius_mm_ &&
               start_ == other.start_;
    }

private:
    friend PipeNetwork build_network(std::vector<SegmentSpec>, double, const StartPose&);

    struct Frame {
        Vec3 position;
        Vec3 tangent;
        Vec3 reference;
    };

    std::vector<SegmentSpec> segments_;
    double inner_radius_mm_ = 0.0;
    StartPose start_;
    std::vector<double> cumulative_;
    std::vector<Frame> entry_frames_;
};

/// Throws EmptyNetwork, BadSegment (message carries the segment index) or
/// InvalidConfig for a bad start pose / radius.
PipeNetwork build_network(std::vector<SegmentSpec> segments, double inner_radius_mm,
                          const StartPose& start = {});

struct PipeDimensions {
    double outer_diameter_mm = 0.0;
    double wall_thickness_mm = 0.0;

    double inner_diameter_mm() const noexcept { return outer_diameter_mm - 2.0 * wall_thickness_mm; }
    double inner_radius_mm() const noexcept { return inner_diameter_mm() / 2.0; }
};

/// Nominal-size / schedule lookup. Text format: one record per line,
/// `designator schedule outer_diameter_mm wall_thickness_mm`; `#` starts a
/// comment.
class DimensionTable {
public:
    static DimensionTable parse(const std::string& text);
    static DimensionTable load(const std::filesystem::path& path);

    /// Table compiled into the library from data/pipe_dimensions.txt.
    static const DimensionTable& builtin();

    /// Throws UnknownSize.
    PipeDimensions lookup(const std::string& nps, const std::string& schedule) const;

    std::size_t size() const noexcept { return rows_.size(); }

private:
    std::map<std::pair<std::string, std::string>, PipeDimensions> rows_;
};

/// Inner radius in mm from the built-in table. Throws UnknownSize.
double pipe_inner_radius(const std::string& nps, const std::string& schedule);

}  // namespace pipeclimb
