#include "pipeclimb/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pipeclimb {

namespace {

void check_model(const Scenario& sc) {
    sc.robot.validate();
    sc.transmission.validate();
    if (!(sc.input_speed_rad_s >= 0.0) || !std::isfinite(sc.input_speed_rad_s)) {
        throw Error(ErrorCode::InvalidConfig, "input speed must be >= 0");
    }
    if (!(sc.slip_stiffness > 0.0) || !std::isfinite(sc.slip_stiffness)) {
        throw Error(ErrorCode::InvalidConfig, "slip stiffness must be > 0");
    }
    if (!(sc.rolling_resistance >= 0.0) || !std::isfinite(sc.rolling_resistance)) {
        throw Error(ErrorCode::InvalidConfig, "rolling resistance must be >= 0");
    }
    if (!(sc.dt_s > 0.0) || !std::isfinite(sc.dt_s)) {
        throw Error(ErrorCode::InvalidConfig, "dt must be > 0");
    }
    if (sc.network.segments().empty()) {
        throw Error(ErrorCode::EmptyNetwork, "scenario has no pipe network");
    }
    const auto& segs = sc.network.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (const auto* b = std::get_if<Bend>(&segs[i])) {
            if (!(b->bend_radius_mm > sc.robot.contact_radius_mm)) {
                std::ostringstream msg;
                msg << "segment " << i << ": bend radius " << b->bend_radius_mm
                    << " mm does not exceed contact radius " << sc.robot.contact_radius_mm << " mm";
                throw Error(ErrorCode::DegenerateBend, msg.str());
            }
        }
    }
}

Vec3d analytic_speeds(const Scenario& sc, std::size_t segment) {
    const double v = sc.centerline_speed();
    const auto& seg = sc.network.segments()[segment];
    if (const auto* b = std::get_if<Bend>(&seg)) {
        const Vec3d angles = sc.robot.module_angles_deg();
        Vec3d out{};
        for (std::size_t i = 0; i < 3; ++i) {
            out[i] = v * track_path_radius(b->bend_radius_mm, sc.robot.contact_radius_mm, angles[i]) /
                     b->bend_radius_mm;
        }
        return out;
    }
    return {v, v, v};
}

}  // namespace

void Scenario::validate() const {
    check_model(*this);
    if (!(max_time_s > dt_s) || !std::isfinite(max_time_s)) {
        throw Error(ErrorCode::InvalidConfig, "max time must exceed dt");
    }
}

double ape(double measured, double theoretical) {
    if (theoretical == 0.0) {
        throw Error(ErrorCode::ZeroReference, "APE undefined for a zero reference value");
    }
    return 100.0 * std::abs(measured - theoretical) / std::abs(theoretical);
}

StepResult step(const Scenario& sc, const SimState& state) {
    const double total = sc.network.total_length();
    if (state.s_mm >= total) {
        throw Error(ErrorCode::EndOfNetwork, "robot reached the end of the network");
    }
    const RobotParams& robot = sc.robot;
    const double v_center = sc.centerline_speed();
    const CenterlinePose pose = sc.network.pose_at(state.s_mm);
    const ModuleState modules = module_state(sc.network, state.s_mm, v_center, robot);

    const double sprocket_m = robot.sprocket_radius_mm * 1e-3;
    const double springs_per_module = robot.springs_per_robot / 3.0;
    // Weight share along the direction of travel, world +z up.
    const double climb_torque = robot.mass_kg * kGravity * pose.tangent.z() * sprocket_m / 3.0;

    std::array<LoadCurve, 3> loads{};
    for (std::size_t j = 0; j < 3; ++j) {
        const double normal_n =
            springs_per_module * robot.spring_k_n_per_m * modules.compression_mm[j] * 1e-3;
        loads[j].stiffness = sc.slip_stiffness;
        loads[j].sprocket_radius = robot.sprocket_radius_mm;
        loads[j].required_speed = modules.required_speed_mm_s[j];
        loads[j].offset = sc.rolling_resistance * normal_n * sprocket_m + climb_torque;
    }
    const TorqueBalance balance =
        solve_torque_balance(sc.input_speed_rad_s, loads, sc.transmission, sc.solver);

    StepResult out;
    SimRecord& rec = out.record;
    rec.t_s = state.t_s(sc.dt_s);
    rec.s_mm = state.s_mm;
    rec.segment = pose.segment_index;
    rec.required_speeds = modules.required_speed_mm_s;
    rec.compressions = modules.compression_mm;
    rec.common_torque_nm = balance.common_torque;
    double mean_speed = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
        rec.track_speeds[j] = balance.output_speeds[j] * robot.sprocket_radius_mm;
        rec.slip[j] = rec.track_speeds[j] - rec.required_speeds[j];
        mean_speed += rec.track_speeds[j];
    }
    mean_speed /= 3.0;

    out.next.step = state.step + 1;
    out.next.s_mm = std::min(state.s_mm + mean_speed * sc.dt_s, total);
    return out;
}

SimSummary summarize(const Scenario& sc, std::span<const SimRecord> records,
                     const SimState& final_state, bool completed) {
    const std::size_t n_seg = sc.network.segments().size();
    SimSummary sum;
    sum.completed = completed;
    sum.traversal_time_s = final_state.t_s(sc.dt_s);
    sum.final_s_mm = final_state.s_mm;
    sum.total_distance_mm = std::max(final_state.s_mm - sc.robot.robot_length_mm, 0.0);
    sum.segments.resize(n_seg);

    for (std::size_t i = 0; i < n_seg; ++i) {
        auto& seg = sum.segments[i];
        seg.index = i;
        seg.is_bend = std::holds_alternative<Bend>(sc.network.segments()[i]);
        seg.entry_time_s = sum.traversal_time_s;
        seg.analytic_speed = analytic_speeds(sc, i);
    }

    for (const auto& rec : records) {
        for (std::size_t j = 0; j < 3; ++j) {
            sum.max_abs_slip_mm_s = std::max(sum.max_abs_slip_mm_s, std::abs(rec.slip[j]));
            sum.max_compression_mm = std::max(sum.max_compression_mm, rec.compressions[j]);
        }
        auto& seg = sum.segments[rec.segment];
        if (seg.samples == 0) {
            // Segments skipped inside one step start here too.
            for (std::size_t i = 0; i <= rec.segment; ++i) {
                sum.segments[i].entry_time_s = std::min(sum.segments[i].entry_time_s, rec.t_s);
            }
        }
        ++seg.samples;
        for (std::size_t j = 0; j < 3; ++j) seg.mean_track_speed[j] += rec.track_speeds[j];
    }

    for (std::size_t i = 0; i < n_seg; ++i) {
        auto& seg = sum.segments[i];
        seg.exit_time_s = i + 1 < n_seg ? sum.segments[i + 1].entry_time_s : sum.traversal_time_s;
        if (seg.samples == 0) continue;
        for (std::size_t j = 0; j < 3; ++j) {
            seg.mean_track_speed[j] /= static_cast<double>(seg.samples);
            if (seg.analytic_speed[j] != 0.0) {
                seg.ape_percent[j] = ape(seg.mean_track_speed[j], seg.analytic_speed[j]);
                sum.ape_percent[j] = std::max(sum.ape_percent[j], seg.ape_percent[j]);
            }
        }
    }
    return sum;
}

RunResult run(const Scenario& sc) {
    check_model(sc);
    RunResult result;
    SimState state;
    const double total = sc.network.total_length();
    while (state.s_mm < total) {
        if (state.t_s(sc.dt_s) >= sc.max_time_s) {
            std::ostringstream msg;
            msg << "robot reached s = " << state.s_mm << " of " << total << " mm within "
                << sc.max_time_s << " s";
            result.summary = summarize(sc, result.records, state, false);
            throw MaxTimeExceeded(msg.str(), std::move(result));
        }
        StepResult r = step(sc, state);
        result.records.push_back(r.record);
        state = r.next;
    }
    result.summary = summarize(sc, result.records, state, true);
    return result;
}

namespace {

SweepEntry run_oriented(const Scenario& base, double theta) {
    SweepEntry entry;
    entry.theta_deg = theta;
    Scenario sc = base;
    sc.robot.orientation_deg = theta;
    try {
        entry.summary = run(sc).summary;
    } catch (const MaxTimeExceeded& e) {
        entry.summary = e.partial().summary;
        entry.error = e.code();
        entry.message = e.what();
    } catch (const Error& e) {
        entry.error = e.code();
        entry.message = e.what();
    }
    return entry;
}

void require_thetas(std::span<const double> thetas) {
    if (thetas.empty()) {
        throw Error(ErrorCode::EmptySweep, "orientation sweep needs at least one angle");
    }
}

}  // namespace

std::vector<SweepEntry> sweep_orientation_serial(const Scenario& scenario,
                                                 std::span<const double> thetas_deg) {
    require_thetas(thetas_deg);
    std::vector<SweepEntry> out;
    out.reserve(thetas_deg.size());
    for (double theta : thetas_deg) out.push_back(run_oriented(scenario, theta));
    return out;
}

std::vector<SweepEntry> sweep_orientation(const Scenario& scenario,
                                          std::span<const double> thetas_deg) {
    require_thetas(thetas_deg);
    std::vector<SweepEntry> out(thetas_deg.size());
    const auto n = static_cast<std::ptrdiff_t>(thetas_deg.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            run_oriented(scenario, thetas_deg[static_cast<std::size_t>(i)]);
    }
    return out;
}

}  // namespace pipeclimb
