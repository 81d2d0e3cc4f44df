#include "pipeclimb/robot_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pipeclimb/error.hpp"

namespace pipeclimb {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidConfig, what);
}

}  // namespace

void RobotParams::validate() const {
    require(contact_radius_mm > 0.0 && std::isfinite(contact_radius_mm), "h must be > 0");
    require(sprocket_radius_mm > 0.0 && std::isfinite(sprocket_radius_mm),
            "sprocket radius must be > 0");
    require(std::isfinite(orientation_deg), "orientation must be finite");
    require(spring_k_n_per_m > 0.0 && std::isfinite(spring_k_n_per_m), "spring k must be > 0");
    require(springs_per_robot > 0, "springs per robot must be > 0");
    require(max_compression_mm > 0.0 && std::isfinite(max_compression_mm),
            "max compression must be > 0");
    require(preload_mm >= 0.0 && std::isfinite(preload_mm), "preload must be >= 0");
    require(max_asym_deg > 0.0 && max_asym_deg < 90.0, "max asymmetry angle must be in (0, 90)");
    require(mass_kg > 0.0 && std::isfinite(mass_kg), "mass must be > 0");
    require(mu > 0.0 && mu < 2.0, "mu must be in (0, 2)");
    require(robot_length_mm > 0.0 && std::isfinite(robot_length_mm), "robot length must be > 0");
    require(bend_extra_compression_mm >= 0.0 && std::isfinite(bend_extra_compression_mm),
            "bend extra compression must be >= 0");
    if (preload_mm > max_compression_mm) {
        std::ostringstream msg;
        msg << "preload " << preload_mm << " mm exceeds max compression " << max_compression_mm
            << " mm";
        throw Error(ErrorCode::CompressionLimit, msg.str());
    }
}

double track_path_radius(double bend_radius_mm, double contact_radius_mm,
                         double module_angle_deg) {
    if (!(bend_radius_mm > contact_radius_mm)) {
        std::ostringstream msg;
        msg << "bend radius " << bend_radius_mm << " mm does not exceed contact radius "
            << contact_radius_mm << " mm";
        throw Error(ErrorCode::DegenerateBend, msg.str());
    }
    return bend_radius_mm + contact_radius_mm * std::cos(module_angle_deg * kDegToRad);
}

Vec3d required_track_speeds(const CenterlinePose& pose, double v_center_mm_s,
                            const RobotParams& params) {
    if (pose.curvature == 0.0) return {v_center_mm_s, v_center_mm_s, v_center_mm_s};

    const double R = pose.bend_radius_mm;
    const Vec3d angles = params.module_angles_deg();
    Vec3d v{};
    for (std::size_t i = 0; i < 3; ++i) {
        v[i] = v_center_mm_s * track_path_radius(R, params.contact_radius_mm, angles[i]) / R;
    }
    return v;
}

Vec3d spring_compression(const CenterlinePose& pose, const RobotParams& params) {
    Vec3d x{};
    const Vec3d angles = params.module_angles_deg();
    for (std::size_t i = 0; i < 3; ++i) {
        x[i] = params.preload_mm;
        if (pose.curvature != 0.0) {
            x[i] += params.bend_extra_compression_mm * std::abs(std::cos(angles[i] * kDegToRad));
        }
        if (x[i] > params.max_compression_mm) {
            std::ostringstream msg;
            msg << "module " << static_cast<char>('A' + i) << " needs " << x[i]
                << " mm compression, limit " << params.max_compression_mm << " mm";
            throw Error(ErrorCode::CompressionLimit, msg.str());
        }
    }
    return x;
}

Vec3d module_tilt_deg(const CenterlinePose& front, const CenterlinePose& rear,
                      const RobotParams& params) {
    const Vec3d xf = spring_compression(front, params);
    const Vec3d xr = spring_compression(rear, params);
    Vec3d tilt{};
    for (std::size_t i = 0; i < 3; ++i) {
        tilt[i] = std::atan2(std::abs(xf[i] - xr[i]), params.robot_length_mm) / kDegToRad;
        if (tilt[i] > params.max_asym_deg) {
            std::ostringstream msg;
            msg << "module " << static_cast<char>('A' + i) << " tilts " << tilt[i]
                << " deg, limit " << params.max_asym_deg << " deg";
            throw Error(ErrorCode::AsymmetryLimit, msg.str());
        }
    }
    return tilt;
}

ModuleState module_state(const PipeNetwork& network, double s, double v_center_mm_s,
                         const RobotParams& params) {
    const CenterlinePose pose = network.pose_at(s);
    const double half = 0.5 * params.robot_length_mm;
    const CenterlinePose front = network.pose_at(std::min(s + half, network.total_length()));
    const CenterlinePose rear = network.pose_at(std::max(s - half, 0.0));

    ModuleState state;
    state.required_speed_mm_s = required_track_speeds(pose, v_center_mm_s, params);
    state.compression_mm = spring_compression(pose, params);
    state.tilt_deg = module_tilt_deg(front, rear, params);
    if (pose.curvature != 0.0) {
        const Vec3d angles = params.module_angles_deg();
        for (std::size_t i = 0; i < 3; ++i) {
            state.contact_path_radius_mm[i] =
                track_path_radius(pose.bend_radius_mm, params.contact_radius_mm, angles[i]);
        }
    }
    return state;
}

double traction_force(double mu, double spring_k_n_per_m, double compression_m,
                      int springs) noexcept {
    return springs * mu * spring_k_n_per_m * compression_m;
}

double traction_force(const RobotParams& params, double compression_mm) noexcept {
    return traction_force(params.mu, params.spring_k_n_per_m, compression_mm * 1e-3,
                          params.springs_per_robot);
}

TractiveEffort tractive_effort_and_torque(double mass_kg, double mu, double spring_k_n_per_m,
                                          double compression_m, double sprocket_radius_m,
                                          int springs) noexcept {
    TractiveEffort te;
    te.effort_n = mass_kg * kGravity - traction_force(mu, spring_k_n_per_m, compression_m, springs);
    te.torque_nm = te.effort_n * sprocket_radius_m;
    return te;
}

TractiveEffort tractive_effort_and_torque(const RobotParams& params,
                                          double compression_mm) noexcept {
    return tractive_effort_and_torque(params.mass_kg, params.mu, params.spring_k_n_per_m,
                                      compression_mm * 1e-3, params.sprocket_radius_mm * 1e-3,
                                      params.springs_per_robot);
}

}  // namespace pipeclimb
