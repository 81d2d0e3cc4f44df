#pragma once

#include <vector>

#include "pipeclimb/simulator.hpp"

namespace pipeclimb::fixtures {

// Vertical climb, 90 degree elbow, horizontal run, 180 degree U-bend.
inline std::vector<SegmentSpec> four_section_segments() {
    return {Straight{500.0}, Bend{300.0, 90.0, 0.0}, Straight{350.0}, Bend{300.0, 180.0, 0.0}};
}

/// h = 50 mm, r_s = 20 mm, unit ratios, 2.5 rad/s -> 50 mm/s centerline.
inline Scenario make_scenario(std::vector<SegmentSpec> segments, double theta_deg = 0.0) {
    Scenario sc;
    sc.network = build_network(std::move(segments), 60.0);
    sc.robot.contact_radius_mm = 50.0;
    sc.robot.sprocket_radius_mm = 20.0;
    sc.robot.orientation_deg = theta_deg;
    sc.robot.preload_mm = 8.0;
    sc.transmission = {1.0, 1.0, 1.0};
    sc.input_speed_rad_s = 2.5;
    sc.dt_s = 0.01;
    sc.max_time_s = 600.0;
    return sc;
}

inline Scenario four_section(double theta_deg = 0.0) {
    return make_scenario(four_section_segments(), theta_deg);
}

}  // namespace pipeclimb::fixtures
