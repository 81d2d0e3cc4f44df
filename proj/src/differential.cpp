#include "pipeclimb/differential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pipeclimb/error.hpp"

namespace pipeclimb {

namespace {

double mean3(const Vec3d& v) { return (v[0] + v[1] + v[2]) / 3.0; }

// Real root of a*u^3 + b*u = rhs with a > 0, b > 0 (single real root).
double solve_monotone_cubic(double a, double b, double rhs) {
    const double p = b / a;
    const double q = -rhs / a;
    const double disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    double u = std::cbrt(-q / 2.0 + disc) + std::cbrt(-q / 2.0 - disc);
    // Cardano cancels badly for small |rhs|; polish with Newton.
    for (int i = 0; i < 4; ++i) {
        const double f = a * u * u * u + b * u - rhs;
        const double df = 3.0 * a * u * u + b;
        const double next = u - f / df;
        if (next == u) break;
        u = next;
    }
    return u;
}

}  // namespace

void TransmissionConfig::validate() const {
    if (!(g1 > 0.0) || !std::isfinite(g1)) {
        throw Error(ErrorCode::InvalidConfig, "g1 must be > 0");
    }
    if (!(g2 > 0.0) || !std::isfinite(g2)) {
        throw Error(ErrorCode::InvalidConfig, "g2 must be > 0");
    }
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "efficiency must be in (0, 1]");
    }
}

double LoadCurve::torque(double speed) const noexcept {
    const double u = speed * sprocket_radius - required_speed;
    return stiffness * u + cubic_stiffness * u * u * u + offset;
}

bool LoadCurve::is_monotone() const noexcept {
    return stiffness > 0.0 && cubic_stiffness >= 0.0 && sprocket_radius > 0.0 &&
           std::isfinite(stiffness) && std::isfinite(cubic_stiffness) &&
           std::isfinite(sprocket_radius);
}

double LoadCurve::inverse(double tau) const {
    if (!is_monotone()) {
        throw Error(ErrorCode::NonMonotoneLoad, "load curve is not strictly increasing");
    }
    const double rhs = tau - offset;
    const double u = cubic_stiffness == 0.0 ? rhs / stiffness
                                            : solve_monotone_cubic(cubic_stiffness, stiffness, rhs);
    return (u + required_speed) / sprocket_radius;
}

TransmissionState solve_free(double input_speed, const TransmissionConfig& config,
                             double input_torque) {
    config.validate();
    const double out = config.speed_ratio() * input_speed;
    return make_state(input_speed, input_torque, {out, out, out}, config);
}

TorqueBalance solve_torque_balance(double input_speed, std::span<const LoadCurve, 3> loads,
                                   const TransmissionConfig& config,
                                   const SolverOptions& options) {
    config.validate();
    if (!(options.tol > 0.0)) {
        throw Error(ErrorCode::InvalidConfig, "solver tolerance must be > 0");
    }
    for (std::size_t j = 0; j < 3; ++j) {
        if (!loads[j].is_monotone()) {
            std::ostringstream msg;
            msg << "load curve " << j << " is not strictly increasing";
            throw Error(ErrorCode::NonMonotoneLoad, msg.str());
        }
    }

    const double target = config.speed_ratio() * input_speed;

    TorqueBalance result;
    auto speeds_at = [&](double tau) {
        Vec3d w{};
        for (std::size_t j = 0; j < 3; ++j) w[j] = loads[j].inverse(tau);
        return w;
    };
    auto residual = [&](double tau) { return mean3(speeds_at(tau)) - target; };

    // At the target speed each load produces some torque; the equilibrium
    // level lies between the smallest and largest of them.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& load : loads) {
        const double t = load.torque(target);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw Error(ErrorCode::NoBracket, "load torque at target speed is not finite");
    }

    double f_lo = residual(lo);
    double f_hi = residual(hi);
    double step = std::max({hi - lo, std::abs(lo) * 1e-12, std::abs(hi) * 1e-12, 1e-300});
    for (int k = 0; f_lo > 0.0; ++k) {
        if (k >= options.max_bracket_expansions || std::abs(lo) > options.torque_limit) {
            throw Error(ErrorCode::NoBracket, "cannot bracket common torque from below");
        }
        hi = lo;
        f_hi = f_lo;
        lo -= step;
        step *= 2.0;
        f_lo = residual(lo);
    }
    step = std::max({hi - lo, std::abs(hi) * 1e-12, 1e-300});
    for (int k = 0; f_hi < 0.0; ++k) {
        if (k >= options.max_bracket_expansions || std::abs(hi) > options.torque_limit) {
            throw Error(ErrorCode::NoBracket, "cannot bracket common torque from above");
        }
        lo = hi;
        f_lo = f_hi;
        hi += step;
        step *= 2.0;
        f_hi = residual(hi);
    }
    if (std::isnan(f_lo) || std::isnan(f_hi)) {
        throw Error(ErrorCode::NoBracket, "residual is not finite");
    }

    // Relative to the target mean; a zero target bisects until the bracket collapses.
    const double threshold = options.tol * std::abs(target);

    double tau = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
    double f_best = std::min(std::abs(f_lo), std::abs(f_hi));
    int it = 0;
    while (f_best > threshold && it < options.max_iterations) {
        ++it;
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = residual(mid);
        if (std::abs(f_mid) < f_best) {
            f_best = std::abs(f_mid);
            tau = mid;
        }
        if (f_mid < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    result.common_torque = tau;
    result.output_speeds = speeds_at(tau);
    for (std::size_t j = 0; j < 3; ++j) {
        result.output_torques[j] = loads[j].torque(result.output_speeds[j]);
    }
    result.iterations = it;
    return result;
}

Vec3d torque_distribution(double input_torque, const TransmissionConfig& config) {
    config.validate();
    const double each = config.efficiency * input_torque / (3.0 * config.speed_ratio());
    return {each, each, each};
}

double input_torque_for(double output_torque, const TransmissionConfig& config) {
    config.validate();
    return 3.0 * config.speed_ratio() * output_torque / config.efficiency;
}

Vec6d internal_state(const Vec3d& output_speeds, double input_speed,
                     const TransmissionConfig& config, double tol) {
    config.validate();
    const double target = config.speed_ratio() * input_speed;
    const double scale = std::max({std::abs(target), std::abs(output_speeds[0]),
                                   std::abs(output_speeds[1]), std::abs(output_speeds[2])});
    const double mismatch = mean3(output_speeds) - target;
    if (std::abs(mismatch) > tol * scale) {
        std::ostringstream msg;
        msg << "mean output speed " << mean3(output_speeds) << " differs from g1*g2*input "
            << target;
        throw Error(ErrorCode::InconsistentOutputs, msg.str());
    }

    const double ring_sum = 2.0 * config.g1 * input_speed;  // L_i + R_i
    Vec3d pair_sum{};                                        // R_j + L_{j+1}
    for (std::size_t j = 0; j < 3; ++j) pair_sum[j] = 2.0 * output_speeds[j] / config.g2;

    // Walk the ring L1 -> R1 -> L2 -> R2 -> L3 -> R3 from L1 = 0.
    Vec6d x{};
    x[0] = 0.0;
    x[1] = ring_sum - x[0];
    x[2] = pair_sum[0] - x[1];
    x[3] = ring_sum - x[2];
    x[4] = pair_sum[1] - x[3];
    x[5] = ring_sum - x[4];

    double t = 0.0;
    for (std::size_t k = 0; k < 6; ++k) t += (k % 2 == 0) ? x[k] : -x[k];
    t /= 6.0;
    for (std::size_t k = 0; k < 6; ++k) x[k] -= (k % 2 == 0) ? t : -t;
    return x;
}

TransmissionState make_state(double input_speed, double input_torque,
                             const Vec3d& output_speeds, const TransmissionConfig& config,
                             double tol) {
    TransmissionState s;
    s.input_speed = input_speed;
    s.input_torque = input_torque;
    s.side_speeds = internal_state(output_speeds, input_speed, config, tol);
    s.ring_speeds.fill(config.g1 * input_speed);
    s.output_speeds = output_speeds;
    s.output_torques = torque_distribution(input_torque, config);
    return s;
}

double power_balance(const TransmissionState& state, const TransmissionConfig& config) {
    double out = 0.0;
    for (std::size_t j = 0; j < 3; ++j) out += state.output_speeds[j] * state.output_torques[j];
    return config.efficiency * state.input_speed * state.input_torque - out;
}

}  // namespace pipeclimb
