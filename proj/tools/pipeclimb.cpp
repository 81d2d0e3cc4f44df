// Command-line front end: run / sweep / validate / dims.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pipeclimb/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace pipeclimb;

namespace {

std::vector<double> parse_thetas(const std::string& list) {
    std::vector<double> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) {
            throw Error(ErrorCode::ValidationError, "--theta: cannot parse '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir,
            const std::string& format_name) {
    const RecordFormat format = parse_record_format(format_name);
    const Scenario sc = parse_scenario(scenario_path);

    RunResult result;
    int code = 0;
    try {
        result = run(sc);
    } catch (const MaxTimeExceeded& e) {
        std::cerr << e.what() << '\n';
        result = e.partial();
        code = exit_code_for(e.code());
    }

    const std::string ext = format == RecordFormat::Csv ? "csv" : "json";
    if (out_dir.empty()) {
        emit_records(result.records, format, std::cout);
        std::cerr << format_summary(result.summary);
    } else {
        std::error_code ec;
        fs::create_directories(out_dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir + ": " + ec.message());
        emit_records(result.records, format, fs::path(out_dir) / ("records." + ext));
        std::ofstream summary(fs::path(out_dir) / "summary.json");
        summary << summary_to_json(result.summary).dump(2) << '\n';
        if (!summary) throw Error(ErrorCode::IoError, "cannot write summary.json");
        std::cout << format_summary(result.summary);
    }
    return code;
}

int cmd_sweep(const std::string& scenario_path, const std::string& theta_list) {
    const Scenario sc = parse_scenario(scenario_path);
    const std::vector<double> thetas = parse_thetas(theta_list);
    const auto entries = sweep_orientation(sc, thetas);

    int code = 0;
    std::printf("%10s %12s %10s %10s %10s %12s %s\n", "theta_deg", "time_s", "apeA_%", "apeB_%",
                "apeC_%", "max_slip", "status");
    for (const auto& e : entries) {
        if (e.summary) {
            const auto& s = *e.summary;
            std::printf("%10.3f %12.4f %10.3e %10.3e %10.3e %12.3e %s\n", e.theta_deg,
                        s.traversal_time_s, s.ape_percent[0], s.ape_percent[1], s.ape_percent[2],
                        s.max_abs_slip_mm_s, e.error ? e.message.c_str() : "ok");
        } else {
            std::printf("%10.3f %12s %10s %10s %10s %12s %s\n", e.theta_deg, "-", "-", "-", "-",
                        "-", e.message.c_str());
        }
        if (e.error) code = exit_code_for(*e.error);
    }
    return code;
}

int cmd_validate(const std::string& scenario_path) {
    const Scenario sc = parse_scenario(scenario_path);
    std::cout << "ok: " << sc.network.segments().size() << " segments, "
              << sc.network.total_length() << " mm, centerline speed " << sc.centerline_speed()
              << " mm/s\n";
    return 0;
}

int cmd_dims(const std::string& nps, const std::string& schedule) {
    const PipeDimensions d = DimensionTable::builtin().lookup(nps, schedule);
    std::printf("nps=%s schedule=%s: OD %.3f mm, wall %.3f mm, ID %.3f mm, inner radius %.3f mm\n",
                nps.c_str(), schedule.c_str(), d.outer_diameter_mm, d.wall_thickness_mm,
                d.inner_diameter_mm(), d.inner_radius_mm());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"In-pipe climbing robot simulator with a three-output open differential"};
    app.require_subcommand(1);

    std::string scenario, out_dir, format = "csv", thetas, nps, schedule;

    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and emit the time series");
    run_cmd->add_option("scenario", scenario, "Scenario file (JSON)")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (records + summary.json)");
    run_cmd->add_option("--format", format, "Record format: csv or json");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario at several orientations");
    sweep_cmd->add_option("scenario", scenario, "Scenario file (JSON)")->required();
    sweep_cmd->add_option("--theta", thetas, "Comma-separated orientations in degrees")->required();

    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a scenario");
    validate_cmd->add_option("scenario", scenario, "Scenario file (JSON)")->required();

    auto* dims_cmd = app.add_subcommand("dims", "Look up pipe dimensions");
    dims_cmd->add_option("nps", nps, "Nominal pipe size, e.g. 6 or 1-1/2")->required();
    dims_cmd->add_option("schedule", schedule, "Schedule, e.g. 40")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*run_cmd) return cmd_run(scenario, out_dir, format);
        if (*sweep_cmd) return cmd_sweep(scenario, thetas);
        if (*validate_cmd) return cmd_validate(scenario);
        if (*dims_cmd) return cmd_dims(nps, schedule);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return 1;
}
