#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pipeclimb/differential.hpp"
#include "pipeclimb/error.hpp"
#include "pipeclimb/pipe_geometry.hpp"
#include "pipeclimb/robot_model.hpp"

namespace pipeclimb {

/// N*m of load torque per mm/s of track slip.
inline constexpr double kDefaultSlipStiffness = 1e4;
inline constexpr double kDefaultRollingResistance = 0.02;
inline constexpr double kDefaultTimeStep = 0.01;
inline constexpr double kDefaultMaxTime = 600.0;

struct Scenario {
    PipeNetwork network;
    RobotParams robot;
    TransmissionConfig transmission;
    double input_speed_rad_s = 0.0;
    double slip_stiffness = kDefaultSlipStiffness;
    // Per-track resistance torque = rolling_resistance * module normal force
    // * sprocket radius. Unequal wall loads in bends are what the
    // differential has to absorb as slip.
    double rolling_resistance = kDefaultRollingResistance;
    double dt_s = kDefaultTimeStep;
    double max_time_s = kDefaultMaxTime;
    SolverOptions solver{.tol = 1e-14};

    /// Throws InvalidConfig / CompressionLimit / DegenerateBend.
    void validate() const;

    /// g1 * g2 * input_speed * sprocket radius, mm/s.
    double centerline_speed() const noexcept {
        return transmission.speed_ratio() * input_speed_rad_s * robot.sprocket_radius_mm;
    }

    bool operator==(const Scenario& o) const {
        return network == o.network && robot == o.robot && transmission == o.transmission &&
               input_speed_rad_s == o.input_speed_rad_s && slip_stiffness == o.slip_stiffness &&
               rolling_resistance == o.rolling_resistance && dt_s == o.dt_s &&
               max_time_s == o.max_time_s;
    }
};

struct SimRecord {
    double t_s = 0.0;
    double s_mm = 0.0;
    std::size_t segment = 0;
    Vec3d track_speeds{};     // mm/s
    Vec3d required_speeds{};  // mm/s
    Vec3d slip{};             // track - required, mm/s
    Vec3d compressions{};     // mm
    double common_torque_nm = 0.0;

    bool operator==(const SimRecord&) const = default;
};

struct SimState {
    std::size_t step = 0;
    double s_mm = 0.0;

    double t_s(double dt) const noexcept { return static_cast<double>(step) * dt; }
};

struct StepResult {
    SimRecord record;
    SimState next;
};

struct SegmentStats {
    std::size_t index = 0;
    bool is_bend = false;
    double entry_time_s = 0.0;
    double exit_time_s = 0.0;
    std::size_t samples = 0;
    Vec3d mean_track_speed{};
    Vec3d analytic_speed{};  // no-slip track speed at nominal centerline speed
    Vec3d ape_percent{};
};

struct SimSummary {
    std::vector<SegmentStats> segments;
    Vec3d ape_percent{};  // per track, worst segment
    double max_abs_slip_mm_s = 0.0;
    double max_compression_mm = 0.0;
    double traversal_time_s = 0.0;
    double final_s_mm = 0.0;
    double total_distance_mm = 0.0;  // traversed arc length minus robot length
    bool completed = false;
};

struct RunResult {
    std::vector<SimRecord> records;
    SimSummary summary;
};

/// Raised by run() when max_time elapses first; keeps what was simulated.
class MaxTimeExceeded : public Error {
public:
    MaxTimeExceeded(const std::string& message, RunResult partial)
        : Error(ErrorCode::MaxTimeExceeded, message), partial_(std::move(partial)) {}

    const RunResult& partial() const noexcept { return partial_; }

private:
    RunResult partial_;
};

/// One quasi-static step: pose, required speeds, slip loads, torque balance,
/// then advance by the mean track speed. Throws EndOfNetwork at the end.
StepResult step(const Scenario& scenario, const SimState& state);

/// Steps from s = 0 until the end of the network. Throws MaxTimeExceeded.
RunResult run(const Scenario& scenario);

SimSummary summarize(const Scenario& scenario, std::span<const SimRecord> records,
                     const SimState& final_state, bool completed);

/// 100 * |measured - theoretical| / |theoretical|. Throws ZeroReference.
double ape(double measured, double theoretical);

struct SweepEntry {
    double theta_deg = 0.0;
    std::optional<SimSummary> summary;
    std::optional<ErrorCode> error;
    std::string message;
};

/// Runs the scenario once per orientation; failures are recorded per entry.
/// Orientations run in parallel (OpenMP). Throws EmptySweep.
std::vector<SweepEntry> sweep_orientation(const Scenario& scenario,
                                          std::span<const double> thetas_deg);

/// Sequential reference for sweep_orientation.
std::vector<SweepEntry> sweep_orientation_serial(const Scenario& scenario,
                                                 std::span<const double> thetas_deg);

}  // namespace pipeclimb
