#pragma once

// Single-input, three-output open differential.
//
// Stage 1: three two-output differentials share the input. Each ring gear
// turns at g1 * input_speed and its side gears (L_i, R_i) average to the ring
// speed. Stage 2: three two-input differentials each take R_j from stage-1
// differential j and L_{j+1 mod 3} from its neighbour; output j turns at
// g2 * (R_j + L_{j+1}) / 2. Side gears of a meshed pair carry equal torque,
// so all three outputs carry the same torque while their speeds float under
// the single constraint mean(output) = g1 * g2 * input_speed.

#include <array>
#include <span>

namespace pipeclimb {

using Vec3d = std::array<double, 3>;
using Vec6d = std::array<double, 6>;

struct TransmissionConfig {
    double g1 = 1.0;          // input -> ring gears
    double g2 = 1.0;          // stage-2 carrier -> output
    double efficiency = 1.0;  // input -> output power efficiency

    /// Throws Error{InvalidConfig} unless g1 > 0, g2 > 0 and 0 < efficiency <= 1.
    void validate() const;

    /// Overall output/input speed ratio.
    double speed_ratio() const noexcept { return g1 * g2; }

    bool operator==(const TransmissionConfig&) const = default;
};

/// Snapshot of every shaft in the train. Side speeds are ordered
/// (L1, R1, L2, R2, L3, R3).
struct TransmissionState {
    double input_speed = 0.0;
    double input_torque = 0.0;
    Vec3d ring_speeds{};
    Vec6d side_speeds{};
    Vec3d output_speeds{};
    Vec3d output_torques{};
};

/// Resistive torque seen by one output as a function of its angular speed.
///
///   u      = speed * sprocket_radius - required_speed      (surface slip)
///   torque = stiffness * u + cubic_stiffness * u^3 + offset
///
/// Monotone increasing whenever stiffness > 0 and cubic_stiffness >= 0.
struct LoadCurve {
    double stiffness = 1.0;
    double sprocket_radius = 1.0;
    double required_speed = 0.0;
    double offset = 0.0;
    double cubic_stiffness = 0.0;

    double torque(double speed) const noexcept;

    /// Speed at which the curve delivers `torque`. Throws NonMonotoneLoad.
    double inverse(double torque) const;

    bool is_monotone() const noexcept;
};

struct SolverOptions {
    double tol = 1e-13;              // relative to the target mean speed
    int max_iterations = 400;
    int max_bracket_expansions = 64;
    double torque_limit = 1e15;      // |tau*| beyond this -> NoBracket
};

struct TorqueBalance {
    Vec3d output_speeds{};
    Vec3d output_torques{};
    double common_torque = 0.0;
    int iterations = 0;
};

/// Unloaded (or equally loaded) train: every output turns at g1*g2*input.
TransmissionState solve_free(double input_speed, const TransmissionConfig& config,
                             double input_torque = 0.0);

/// Equal-torque / mean-speed equilibrium for three monotone loads, found by
/// bracketed bisection on the common torque level.
TorqueBalance solve_torque_balance(double input_speed, std::span<const LoadCurve, 3> loads,
                                   const TransmissionConfig& config,
                                   const SolverOptions& options = {});

/// Ideal split: each output gets efficiency * input_torque / (3 * g1 * g2).
Vec3d torque_distribution(double input_torque, const TransmissionConfig& config);

/// Input torque that produces `output_torque` on each output.
double input_torque_for(double output_torque, const TransmissionConfig& config);

/// Minimum-norm side-gear speeds consistent with the given outputs. The
/// linear system has rank 5; its null space is the internal circulation mode
/// (+t, -t, +t, -t, +t, -t), which is projected out.
Vec6d internal_state(const Vec3d& output_speeds, double input_speed,
                     const TransmissionConfig& config, double tol = 1e-9);

/// Full state from outputs and input torque. Throws InconsistentOutputs.
TransmissionState make_state(double input_speed, double input_torque,
                             const Vec3d& output_speeds, const TransmissionConfig& config,
                             double tol = 1e-9);

/// efficiency * input power - sum of output power.
double power_balance(const TransmissionState& state, const TransmissionConfig& config);

}  // namespace pipeclimb
