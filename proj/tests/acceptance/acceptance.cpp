// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles/oracles.hpp"
#include "pipeclimb/differential.hpp"
#include "pipeclimb/robot_model.hpp"
#include "pipeclimb/scenario_io.hpp"
#include "pipeclimb/simulator.hpp"

using namespace pipeclimb;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double mean3(const Vec3d& v) { return (v[0] + v[1] + v[2]) / 3.0; }

std::array<LoadCurve, 3> random_monotone_loads(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> stiff(0.01, 100.0), radius(0.5, 2.0), req(-50.0, 50.0),
        off(-10.0, 10.0), cubic(0.0, 5.0), coin(0.0, 1.0);
    std::array<LoadCurve, 3> loads{};
    for (auto& l : loads) {
        l.stiffness = stiff(rng);
        l.sprocket_radius = radius(rng);
        l.required_speed = req(rng);
        l.offset = off(rng);
        l.cubic_stiffness = coin(rng) < 0.5 ? 0.0 : cubic(rng);
    }
    return loads;
}

struct SweepSample {
    TransmissionConfig cfg;
    double input_speed;
    TorqueBalance balance;
};

// Shared by criteria 1 and 2.
std::vector<SweepSample> balance_sweep(double& elapsed) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> g(0.2, 5.0), w(0.0, 50.0);
    std::vector<SweepSample> out;
    out.reserve(1000);
    for (int n = 0; n < 1000; ++n) {
        const TransmissionConfig cfg{g(rng), g(rng), 1.0};
        const double wu = w(rng);
        const auto loads = random_monotone_loads(rng);
        out.push_back({cfg, wu, solve_torque_balance(wu, loads, cfg)});
    }
    elapsed = seconds_since(t0);
    return out;
}

Check criterion_averaging(const std::vector<SweepSample>& sweep, double elapsed) {
    Check c;
    double worst = 0.0;
    for (const auto& s : sweep) {
        const double target = s.cfg.speed_ratio() * s.input_speed;
        worst = std::max(worst, std::abs(mean3(s.balance.output_speeds) - target) /
                                    std::max(std::abs(target), 1.0));
    }
    c.require(worst <= 1e-9, "mean speed error " + fmt(worst));
    c.require(elapsed < 5.0, "runtime " + fmt(elapsed) + " s");
    c.detail = c.ok ? "worst rel err " + fmt(worst) + ", " + fmt(elapsed) + " s"
                    : c.detail;
    return c;
}

Check criterion_equal_torque(const std::vector<SweepSample>& sweep) {
    Check c;
    double worst_torque = 0.0, worst_power = 0.0;
    for (const auto& s : sweep) {
        const auto& b = s.balance;
        const double scale = std::max(std::abs(b.common_torque), 1.0);
        for (double t : b.output_torques) {
            worst_torque = std::max(worst_torque, std::abs(t - b.common_torque) / scale);
        }
        const double tau_in = input_torque_for(b.common_torque, s.cfg);
        const auto state = make_state(s.input_speed, tau_in, b.output_speeds, s.cfg);
        const double p_in = std::max(std::abs(s.input_speed * tau_in), 1e-12);
        worst_power = std::max(worst_power, std::abs(power_balance(state, s.cfg)) / p_in);
    }
    c.require(worst_torque <= 1e-9, "torque spread " + fmt(worst_torque));
    c.require(worst_power < 1e-9, "power residual " + fmt(worst_power));
    if (c.ok) c.detail = "torque spread " + fmt(worst_torque) + ", power residual " +
                         fmt(worst_power);
    return c;
}

Check criterion_closed_form() {
    Check c;
    const auto t0 = Clock::now();
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> g(0.2, 5.0), w(0.0, 20.0), v(-100.0, 100.0),
        k(0.01, 1e4), rs(1.0, 50.0);
    double worst = 0.0;
    for (int n = 0; n < 1000; ++n) {
        const TransmissionConfig cfg{g(rng), g(rng), 1.0};
        const double wu = w(rng), r_s = rs(rng), stiffness = k(rng);
        const Vec3d req{v(rng), v(rng), v(rng)};
        std::array<LoadCurve, 3> loads{};
        for (std::size_t j = 0; j < 3; ++j) loads[j] = {stiffness, r_s, req[j], 0.0, 0.0};
        const auto r = solve_torque_balance(wu, loads, cfg);
        const auto ref = oracle::equal_slip(wu, cfg.speed_ratio(), r_s, req);
        for (std::size_t j = 0; j < 3; ++j) {
            worst = std::max(worst, std::abs(r.output_speeds[j] - ref.speeds[j]) /
                                        std::max(std::abs(ref.speeds[j]), 1.0));
        }
    }
    const double elapsed = seconds_since(t0);
    c.require(worst <= 1e-9, "deviation " + fmt(worst));
    c.require(elapsed < 1.0, "runtime " + fmt(elapsed) + " s");
    if (c.ok) c.detail = "worst deviation " + fmt(worst) + ", " + fmt(elapsed) + " s";
    return c;
}

Check criterion_internal_state() {
    Check c;
    const Vec3d out{12.0, 10.0, 8.0};
    const auto x = internal_state(out, 10.0, {1.0, 1.0, 1.0});
    const auto ref = oracle::side_speeds_lstsq(out, 10.0, 1.0, 1.0);
    const std::array<double, 6> expected{22.0 / 3, 38.0 / 3, 34.0 / 3, 26.0 / 3, 34.0 / 3, 26.0 / 3};
    for (std::size_t k = 0; k < 6; ++k) {
        c.require(std::abs(x[k] - expected[k]) <= 1e-9, "component " + fmt(k));
        c.require(std::abs(x[k] - ref[k]) <= 1e-9, "oracle mismatch at " + fmt(k));
    }
    if (c.ok) c.detail = "matches least-squares oracle";
    return c;
}

Check criterion_bend_kinematics() {
    Check c;
    const auto sc = fixtures::make_scenario({Straight{200.0}, Bend{300.0, 90.0, 0.0}, Straight{200.0}}, 0.0);
    const auto res = run(sc);
    const double vc = sc.centerline_speed();
    const std::array<double, 3> ratio{350.0 / 300.0, 275.0 / 300.0, 275.0 / 300.0};
    double worst_ratio = 0.0, worst_mean = 0.0;
    std::size_t samples = 0;
    const double bend_start = sc.network.segment_start(1);
    const double bend_end = sc.network.cumulative_lengths()[1];
    const double half = 0.5 * sc.robot.robot_length_mm;
    for (const auto& rec : res.records) {
        // Steady state: the whole robot body is inside the bend.
        if (rec.s_mm < bend_start + half || rec.s_mm > bend_end - half) continue;
        ++samples;
        for (std::size_t j = 0; j < 3; ++j) {
            worst_ratio = std::max(worst_ratio, rel(rec.track_speeds[j] / vc, ratio[j]));
        }
        worst_mean = std::max(worst_mean, rel(mean3(rec.track_speeds), vc));
    }
    c.require(samples > 0, "no steady-state samples");
    c.require(worst_ratio <= 1e-3, "ratio error " + fmt(worst_ratio));
    c.require(worst_mean <= 1e-6, "mean speed error " + fmt(worst_mean));
    if (c.ok) c.detail = fmt(samples) + " samples, ratio err " + fmt(worst_ratio);
    return c;
}

Check criterion_no_slip() {
    Check c;
    const auto t0 = Clock::now();
    const auto base = run(fixtures::four_section());
    const double elapsed = seconds_since(t0);
    c.require(base.summary.completed, "run did not complete");
    c.require(base.summary.max_abs_slip_mm_s < 1e-6,
              "max slip " + fmt(base.summary.max_abs_slip_mm_s));
    c.require(elapsed < 10.0, "runtime " + fmt(elapsed) + " s");
    double previous = std::numeric_limits<double>::infinity();
    char buf[160];
    std::string trend;
    for (double scale : {1.0, 10.0, 100.0}) {
        auto sc = fixtures::four_section();
        sc.slip_stiffness = kDefaultSlipStiffness * scale;
        const double slip = run(sc).summary.max_abs_slip_mm_s;
        c.require(slip < previous, "slip not decreasing at x" + fmt(scale));
        std::snprintf(buf, sizeof buf, "%s%.3g", trend.empty() ? "" : " > ", slip);
        trend += buf;
        previous = slip;
    }
    if (c.ok) {
        std::snprintf(buf, sizeof buf, "max slip %.3g mm/s, %.2f s; ", base.summary.max_abs_slip_mm_s,
                      elapsed);
        c.detail = buf + trend;
    }
    return c;
}

Check criterion_ape() {
    Check c;
    const auto res = run(fixtures::four_section());
    double worst = 0.0;
    for (const auto& seg : res.summary.segments) {
        if (!seg.is_bend) continue;
        for (double a : seg.ape_percent) worst = std::max(worst, a);
    }
    c.require(worst <= 2.5, "APE " + fmt(worst) + "% above 2.5%");
    c.require(worst <= 0.1, "APE " + fmt(worst) + "% above 0.1%");
    if (c.ok) c.detail = "worst bend APE " + fmt(worst) + "%";
    return c;
}

Check criterion_orientation() {
    Check c;
    const auto sc = fixtures::four_section();
    const std::vector<double> thetas{0.0, 30.0, 60.0, 90.0, 120.0};
    const auto entries = sweep_orientation(sc, thetas);
    double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
    for (const auto& e : entries) {
        c.require(e.summary.has_value() && !e.error, "theta " + fmt(e.theta_deg) + ": " + e.message);
        if (!e.summary) return c;
        tmin = std::min(tmin, e.summary->traversal_time_s);
        tmax = std::max(tmax, e.summary->traversal_time_s);
    }
    const double spread = (tmax - tmin) / tmin;
    c.require(spread < 5e-3, "traversal time spread " + fmt(spread));

    // 120 deg moves every module one slot along: track j at 120 is track j+1 at 0.
    const auto& a = *entries[0].summary;
    const auto& b = *entries[4].summary;
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max(1.0, std::abs(y)); };
    c.require(close(a.traversal_time_s, b.traversal_time_s), "time differs");
    c.require(close(a.max_abs_slip_mm_s, b.max_abs_slip_mm_s), "max slip differs");
    c.require(close(a.max_compression_mm, b.max_compression_mm), "max compression differs");
    for (std::size_t s = 0; s < a.segments.size(); ++s) {
        for (std::size_t j = 0; j < 3; ++j) {
            const std::size_t k = (j + 1) % 3;
            c.require(close(b.segments[s].mean_track_speed[j], a.segments[s].mean_track_speed[k]),
                      "segment speeds not a relabeling");
            c.require(close(b.segments[s].analytic_speed[j], a.segments[s].analytic_speed[k]),
                      "analytic speeds not a relabeling");
        }
    }
    if (c.ok) c.detail = "time spread " + fmt(100.0 * spread) + "%";
    return c;
}

Check criterion_compression() {
    Check c;
    auto doc = scenario_to_json(fixtures::four_section());
    doc["robot"]["preload_mm"] = 17.0;
    try {
        parse_scenario_text(doc.dump());
        c.require(false, "preload 17 mm parsed");
    } catch (const Error& e) {
        c.require(e.code() == ErrorCode::CompressionLimit, std::string("parse raised ") + e.what());
    }

    auto sc = fixtures::four_section();
    sc.robot.preload_mm = 15.0;
    try {
        run(sc);
        c.require(false, "preload 15 mm + 1.5 mm elbow ran");
    } catch (const Error& e) {
        c.require(e.code() == ErrorCode::CompressionLimit, std::string("step raised ") + e.what());
    }

    const auto nominal = fixtures::four_section();
    const auto straight = step(nominal, SimState{0, 100.0}).record;
    const auto elbow = step(nominal, SimState{0, 700.0}).record;
    c.require(elbow.segment == 1, "sample not in the elbow");
    c.require(std::abs(elbow.compressions[0] - straight.compressions[0] - 1.5) <= 1e-12,
              "bend-plane increment " + fmt(elbow.compressions[0] - straight.compressions[0]));
    if (c.ok) c.detail = "limit enforced; elbow increment 1.5 mm";
    return c;
}

Check criterion_formulas() {
    Check c;
    struct Case {
        double mu, k, x, m, r, force, effort, torque;
    };
    // Hand-computed: F = 12 mu k x, TE = m g - F, tau = TE r.
    const Case cases[] = {
        {0.4, 2000.0, 0.010, 10.0, 0.030, 96.0, 2.1, 0.063},
        {0.3, 1000.0, 0.016, 15.0, 0.020, 57.6, 89.55, 1.791},
        {0.3, 1000.0, 0.010, 15.0, 0.020, 36.0, 111.15, 2.223},
        {0.5, 500.0, 0.008, 5.0, 0.025, 24.0, 25.05, 0.62625},
        {0.0, 1000.0, 0.010, 2.0, 0.100, 0.0, 19.62, 1.962},
    };
    // A few ulps of the largest operand: TE = m g - F can cancel.
    auto machine = [](double got, double want, double scale) {
        return std::abs(got - want) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, std::abs(want));
    };
    for (const auto& cs : cases) {
        const double f = traction_force(cs.mu, cs.k, cs.x);
        const auto te = tractive_effort_and_torque(cs.m, cs.mu, cs.k, cs.x, cs.r);
        const double operands = std::max(cs.m * kGravity, cs.force);
        c.require(machine(f, cs.force, cs.force), "traction " + fmt(f));
        c.require(machine(te.effort_n, cs.effort, operands), "effort " + fmt(te.effort_n));
        c.require(machine(te.torque_nm, cs.torque, operands * cs.r), "torque " + fmt(te.torque_nm));
    }

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> mu(0.01, 1.9), k(10.0, 1e4), x(0.0, 0.016), a(0.1, 3.0);
    for (int n = 0; n < 1000; ++n) {
        const double m = mu(rng), kk = k(rng), xx = x(rng), s = a(rng), x2 = x(rng);
        const double f = traction_force(m, kk, xx);
        const double tol = 1e-13 * std::max(1.0, std::abs(f * s));
        c.require(std::abs(traction_force(s * m, kk, xx) - s * f) <= tol, "not linear in mu");
        c.require(std::abs(traction_force(m, s * kk, xx) - s * f) <= tol, "not linear in k");
        c.require(std::abs(traction_force(m, kk, s * xx) - s * f) <= tol, "not linear in x");
        c.require(std::abs(traction_force(m, kk, xx + x2) - f - traction_force(m, kk, x2)) <= tol,
                  "not additive in x");
    }
    if (c.ok) c.detail = "5 hand-computed sets exact; linearity holds";
    return c;
}

}  // namespace

int main() {
    double sweep_time = 0.0;
    std::vector<SweepSample> sweep;

    const std::vector<std::pair<const char*, std::function<Check()>>> criteria = {
        {"averaging law", [&] {
             sweep = balance_sweep(sweep_time);
             return criterion_averaging(sweep, sweep_time);
         }},
        {"equal torque and power balance", [&] { return criterion_equal_torque(sweep); }},
        {"equal-slip closed form", criterion_closed_form},
        {"internal state vs least squares", criterion_internal_state},
        {"bend kinematics 350:275:275", criterion_bend_kinematics},
        {"no slip over four sections", criterion_no_slip},
        {"bend speed APE", criterion_ape},
        {"orientation independence", criterion_orientation},
        {"compression limits", criterion_compression},
        {"traction formulas", criterion_formulas},
    };

    int failures = 0;
    int index = 1;
    for (const auto& [name, fn] : criteria) {
        Check result;
        try {
            result = fn();
        } catch (const std::exception& e) {
            result.ok = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (!result.ok) ++failures;
        std::printf("%s [%d] %s: %s\n", result.ok ? "PASS" : "FAIL", index++, name, result.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
