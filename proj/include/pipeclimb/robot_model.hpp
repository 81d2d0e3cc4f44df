#pragma once

#include "pipeclimb/differential.hpp"
#include "pipeclimb/pipe_geometry.hpp"

namespace pipeclimb {

inline constexpr double kGravity = 9.81;  // m/s^2

/// Three track modules spaced 120 degrees apart, each pressed against the
/// wall by linear springs. Track A sits at orientation_deg from the local
/// bend outward direction, B and C follow at +120 and +240 degrees.
struct RobotParams {
    double contact_radius_mm = 50.0;    // h: robot axis to track contact line
    double sprocket_radius_mm = 20.0;   // r_s
    double orientation_deg = 0.0;       // theta
    double spring_k_n_per_m = 1000.0;   // per spring
    int springs_per_robot = 12;         // 4 linkages x 3 modules
    double preload_mm = 8.0;            // x0
    double max_compression_mm = 16.0;
    double max_asym_deg = 15.0;         // phi
    double mass_kg = 15.0;
    double mu = 0.3;
    double robot_length_mm = 200.0;
    double bend_extra_compression_mm = 1.5;

    /// InvalidConfig for out-of-domain values, CompressionLimit when the
    /// preload alone exceeds max_compression_mm.
    void validate() const;

    Vec3d module_angles_deg() const noexcept {
        return {orientation_deg, orientation_deg + 120.0, orientation_deg + 240.0};
    }

    bool operator==(const RobotParams&) const = default;
};

struct ModuleState {
    Vec3d compression_mm{};
    Vec3d contact_path_radius_mm{};  // 0 on straights
    Vec3d required_speed_mm_s{};
    Vec3d tilt_deg{};
};

/// R + h*cos(angle). Throws DegenerateBend when R <= h.
double track_path_radius(double bend_radius_mm, double contact_radius_mm, double module_angle_deg);

/// Per-track surface speed needed to follow the local centerline at
/// v_center without slipping. Mean of the result equals v_center.
Vec3d required_track_speeds(const CenterlinePose& pose, double v_center_mm_s,
                            const RobotParams& params);

/// Preload on straights; inside bends each module gains
/// bend_extra_compression_mm * |cos(theta_i)|. Throws CompressionLimit.
Vec3d spring_compression(const CenterlinePose& pose, const RobotParams& params);

/// Module tilt from the front/rear compression difference over the robot
/// length. Throws AsymmetryLimit when any tilt exceeds max_asym_deg.
Vec3d module_tilt_deg(const CenterlinePose& front, const CenterlinePose& rear,
                      const RobotParams& params);

/// Everything above for the robot centred at arc length s; front and rear
/// ends are clamped to the network.
ModuleState module_state(const PipeNetwork& network, double s, double v_center_mm_s,
                         const RobotParams& params);

/// Wall traction f = springs * mu * k * x. SI units (N/m, m).
double traction_force(double mu, double spring_k_n_per_m, double compression_m,
                      int springs = 12) noexcept;
double traction_force(const RobotParams& params, double compression_mm) noexcept;

struct TractiveEffort {
    double effort_n = 0.0;   // m*g - springs*mu*k*x
    double torque_nm = 0.0;  // effort * sprocket radius
};

TractiveEffort tractive_effort_and_torque(double mass_kg, double mu, double spring_k_n_per_m,
                                          double compression_m, double sprocket_radius_m,
                                          int springs = 12) noexcept;
TractiveEffort tractive_effort_and_torque(const RobotParams& params, double compression_mm) noexcept;

}  // namespace pipeclimb
