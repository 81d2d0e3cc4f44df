#include "pipeclimb/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pipeclimb {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ValidationError, path + ": " + what);
}

// Reads one JSON object, tracking which keys were consumed so leftovers can
// be reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) invalid(display(), "expected an object");
    }

    std::string key_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json& get(const std::string& key) {
        seen_.insert(key);
        const auto it = node_.find(key);
        if (it == node_.end()) invalid(key_path(key), "missing required key");
        return *it;
    }

    double number(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number()) invalid(key_path(key), "expected a number");
        const double d = v.get<double>();
        if (!std::isfinite(d)) invalid(key_path(key), "must be finite");
        return d;
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : (seen_.insert(key), fallback);
    }

    int integer_or(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& v = get(key);
        if (!v.is_number_integer()) invalid(key_path(key), "expected an integer");
        return v.get<int>();
    }

    // Numbers are accepted too, e.g. "nps": 6.
    std::string text(const std::string& key) {
        const json& v = get(key);
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        invalid(key_path(key), "expected a string");
    }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) invalid(key_path(key), "unknown key");
        }
    }

private:
    std::string display() const { return path_.empty() ? "<root>" : path_; }

    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

void require_range(bool ok, const std::string& path, const char* what) {
    if (!ok) invalid(path, what);
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

SegmentSpec read_segment(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string kind = r.text("kind");
    SegmentSpec seg;
    if (kind == "straight") {
        Straight st;
        st.length_mm = r.number("length_mm");
        require_range(st.length_mm > 0.0, r.key_path("length_mm"), "must be > 0");
        seg = st;
    } else if (kind == "bend") {
        Bend b;
        b.bend_radius_mm = r.number("bend_radius_mm");
        b.sweep_deg = r.number("sweep_deg");
        b.roll_deg = r.number_or("roll_deg", 0.0);
        require_range(b.bend_radius_mm > 0.0, r.key_path("bend_radius_mm"), "must be > 0");
        require_range(b.sweep_deg > 0.0 && b.sweep_deg <= 180.0, r.key_path("sweep_deg"),
                      "must be in (0, 180]");
        seg = b;
    } else {
        invalid(r.key_path("kind"), "expected \"straight\" or \"bend\"");
    }
    r.finish();
    return seg;
}

PipeNetwork read_pipe(const json& node, double contact_radius_mm) {
    ObjectReader r(node, "pipe");
    double inner_radius = 0.0;
    const bool by_radius = r.has("inner_radius_mm");
    const bool by_size = r.has("nps") || r.has("schedule");
    if (by_radius == by_size) {
        invalid("pipe", "give either inner_radius_mm or nps + schedule");
    }
    if (by_radius) {
        inner_radius = r.number("inner_radius_mm");
        require_range(inner_radius > 0.0, "pipe.inner_radius_mm", "must be > 0");
    } else {
        const std::string nps = r.text("nps");
        const std::string schedule = r.text("schedule");
        try {
            inner_radius = pipe_inner_radius(nps, schedule);
        } catch (const Error& e) {
            invalid("pipe.nps", e.what());
        }
    }

    const json& list = r.get("segments");
    if (!list.is_array() || list.empty()) invalid("pipe.segments", "expected a non-empty array");
    std::vector<SegmentSpec> segments;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "pipe.segments[" + std::to_string(i) + "]";
        segments.push_back(read_segment(list[i], path));
        if (const auto* b = std::get_if<Bend>(&segments.back())) {
            if (!(b->bend_radius_mm > contact_radius_mm)) {
                invalid(path + ".bend_radius_mm",
                        "degenerate bend: radius must exceed robot.h_mm");
            }
            if (!(b->bend_radius_mm > inner_radius)) {
                invalid(path + ".bend_radius_mm", "must exceed the pipe inner radius");
            }
        }
    }
    r.finish();

    try {
        return build_network(std::move(segments), inner_radius);
    } catch (const Error& e) {
        invalid("pipe", e.what());
    }
}

RobotParams read_robot(const json& node) {
    ObjectReader r(node, "robot");
    RobotParams p;
    p.contact_radius_mm = r.number("h_mm");
    p.sprocket_radius_mm = r.number("sprocket_radius_mm");
    p.orientation_deg = r.number("orientation_deg");
    p.spring_k_n_per_m = r.number("spring_k_n_per_m");
    p.preload_mm = r.number("preload_mm");
    p.max_compression_mm = r.number_or("max_compression_mm", p.max_compression_mm);
    p.springs_per_robot = r.integer_or("springs", p.springs_per_robot);
    p.mass_kg = r.number("mass_kg");
    p.mu = r.number("mu");
    p.robot_length_mm = r.number("robot_length_mm");
    p.max_asym_deg = r.number_or("max_asym_deg", p.max_asym_deg);
    r.finish();

    require_range(p.contact_radius_mm > 0.0, "robot.h_mm", "must be > 0");
    require_range(p.sprocket_radius_mm > 0.0, "robot.sprocket_radius_mm", "must be > 0");
    require_range(p.spring_k_n_per_m > 0.0, "robot.spring_k_n_per_m", "must be > 0");
    require_range(p.preload_mm >= 0.0, "robot.preload_mm", "must be >= 0");
    require_range(p.max_compression_mm > 0.0, "robot.max_compression_mm", "must be > 0");
    require_range(p.springs_per_robot > 0, "robot.springs", "must be > 0");
    require_range(p.mass_kg > 0.0, "robot.mass_kg", "must be > 0");
    require_range(p.mu > 0.0 && p.mu < 2.0, "robot.mu", "must be in (0, 2)");
    require_range(p.robot_length_mm > 0.0, "robot.robot_length_mm", "must be > 0");
    require_range(p.max_asym_deg > 0.0 && p.max_asym_deg < 90.0, "robot.max_asym_deg",
                  "must be in (0, 90)");
    return p;
}

TransmissionConfig read_transmission(const json& node) {
    ObjectReader r(node, "transmission");
    TransmissionConfig c;
    c.g1 = r.number("g1");
    c.g2 = r.number("g2");
    c.efficiency = r.number_or("efficiency", 1.0);
    r.finish();
    require_range(c.g1 > 0.0, "transmission.g1", "must be > 0");
    require_range(c.g2 > 0.0, "transmission.g2", "must be > 0");
    require_range(c.efficiency > 0.0 && c.efficiency <= 1.0, "transmission.efficiency",
                  "must be in (0, 1]");
    return c;
}

Scenario read_scenario(const json& doc) {
    ObjectReader root(doc, "");
    Scenario sc;
    sc.robot = read_robot(root.get("robot"));
    sc.transmission = read_transmission(root.get("transmission"));

    ObjectReader sim(root.get("sim"), "sim");
    sc.input_speed_rad_s = sim.number("input_speed_rad_s");
    sc.slip_stiffness = sim.number_or("slip_stiffness", kDefaultSlipStiffness);
    sc.rolling_resistance = sim.number_or("rolling_resistance", kDefaultRollingResistance);
    sc.dt_s = sim.number_or("dt_s", kDefaultTimeStep);
    sc.max_time_s = sim.number_or("max_time_s", kDefaultMaxTime);
    sc.robot.bend_extra_compression_mm =
        sim.number_or("bend_extra_compression_mm", sc.robot.bend_extra_compression_mm);
    sim.finish();
    require_range(sc.input_speed_rad_s >= 0.0, "sim.input_speed_rad_s", "must be >= 0");
    require_range(sc.slip_stiffness > 0.0, "sim.slip_stiffness", "must be > 0");
    require_range(sc.rolling_resistance >= 0.0, "sim.rolling_resistance", "must be >= 0");
    require_range(sc.dt_s > 0.0, "sim.dt_s", "must be > 0");
    require_range(sc.max_time_s > sc.dt_s, "sim.max_time_s", "must exceed sim.dt_s");
    require_range(sc.robot.bend_extra_compression_mm >= 0.0, "sim.bend_extra_compression_mm",
                  "must be >= 0");

    sc.network = read_pipe(root.get("pipe"), sc.robot.contact_radius_mm);
    root.finish();
    require_range(sc.robot.contact_radius_mm <= sc.network.inner_radius_mm(), "robot.h_mm",
                  "must not exceed the pipe inner radius");

    try {
        sc.validate();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::CompressionLimit) throw;
        invalid("<scenario>", e.what());
    }
    return sc;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

json segment_to_json(const SegmentSpec& seg) {
    if (const auto* st = std::get_if<Straight>(&seg)) {
        return {{"kind", "straight"}, {"length_mm", st->length_mm}};
    }
    const auto& b = std::get<Bend>(seg);
    return {{"kind", "bend"},
            {"bend_radius_mm", b.bend_radius_mm},
            {"sweep_deg", b.sweep_deg},
            {"roll_deg", b.roll_deg}};
}

json vec_json(const Vec3d& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

Scenario parse_scenario_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << "line " << line_of(text, e.byte == 0 ? 0 : e.byte - 1) << ": " << e.what();
        throw Error(ErrorCode::ParseError, msg.str());
    }
    return read_scenario(doc);
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_scenario_text(text.str());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) {
            throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
        }
        throw;
    }
}

json scenario_to_json(const Scenario& sc) {
    json segments = json::array();
    for (const auto& seg : sc.network.segments()) segments.push_back(segment_to_json(seg));
    const RobotParams& r = sc.robot;
    return {
        {"pipe", {{"inner_radius_mm", sc.network.inner_radius_mm()}, {"segments", segments}}},
        {"robot",
         {{"h_mm", r.contact_radius_mm},
          {"sprocket_radius_mm", r.sprocket_radius_mm},
          {"orientation_deg", r.orientation_deg},
          {"spring_k_n_per_m", r.spring_k_n_per_m},
          {"preload_mm", r.preload_mm},
          {"max_compression_mm", r.max_compression_mm},
          {"springs", r.springs_per_robot},
          {"mass_kg", r.mass_kg},
          {"mu", r.mu},
          {"robot_length_mm", r.robot_length_mm},
          {"max_asym_deg", r.max_asym_deg}}},
        {"transmission",
         {{"g1", sc.transmission.g1},
          {"g2", sc.transmission.g2},
          {"efficiency", sc.transmission.efficiency}}},
        {"sim",
         {{"input_speed_rad_s", sc.input_speed_rad_s},
          {"slip_stiffness", sc.slip_stiffness},
          {"rolling_resistance", sc.rolling_resistance},
          {"dt_s", sc.dt_s},
          {"max_time_s", sc.max_time_s},
          {"bend_extra_compression_mm", r.bend_extra_compression_mm}}},
    };
}

RecordFormat parse_record_format(std::string_view name) {
    if (name == "csv") return RecordFormat::Csv;
    if (name == "json") return RecordFormat::Json;
    throw Error(ErrorCode::ValidationError, "format must be csv or json");
}

void emit_records(std::span<const SimRecord> records, RecordFormat format, std::ostream& out) {
    if (format == RecordFormat::Json) {
        json arr = json::array();
        for (const auto& rec : records) {
            json row = json::object();
            row[kRecordColumns[0]] = rec.t_s;
            row[kRecordColumns[1]] = rec.s_mm;
            row[kRecordColumns[2]] = rec.segment;
            for (std::size_t j = 0; j < 3; ++j) {
                row[kRecordColumns[3 + j]] = rec.track_speeds[j];
                row[kRecordColumns[6 + j]] = rec.required_speeds[j];
                row[kRecordColumns[9 + j]] = rec.slip[j];
                row[kRecordColumns[12 + j]] = rec.compressions[j];
            }
            row[kRecordColumns[15]] = rec.common_torque_nm;
            arr.push_back(std::move(row));
        }
        out << arr.dump(1) << '\n';
    } else {
        for (std::size_t c = 0; c < kRecordColumns.size(); ++c) {
            out << (c ? "," : "") << kRecordColumns[c];
        }
        out << '\n';
        for (const auto& rec : records) {
            out << format_number(rec.t_s) << ',' << format_number(rec.s_mm) << ',' << rec.segment;
            for (const Vec3d* v : {&rec.track_speeds, &rec.required_speeds, &rec.slip,
                                   &rec.compressions}) {
                for (double x : *v) out << ',' << format_number(x);
            }
            out << ',' << format_number(rec.common_torque_nm) << '\n';
        }
    }
    if (!out) throw Error(ErrorCode::IoError, "failed writing records");
}

void emit_records(std::span<const SimRecord> records, RecordFormat format,
                  const std::filesystem::path& destination) {
    std::ofstream out(destination);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + destination.string());
    emit_records(records, format, out);
}

json summary_to_json(const SimSummary& s) {
    json segments = json::array();
    for (const auto& seg : s.segments) {
        segments.push_back({{"index", seg.index},
                            {"kind", seg.is_bend ? "bend" : "straight"},
                            {"entry_time_s", seg.entry_time_s},
                            {"exit_time_s", seg.exit_time_s},
                            {"samples", seg.samples},
                            {"mean_track_speed_mm_s", vec_json(seg.mean_track_speed)},
                            {"analytic_speed_mm_s", vec_json(seg.analytic_speed)},
                            {"ape_percent", vec_json(seg.ape_percent)}});
    }
    return {{"completed", s.completed},
            {"traversal_time_s", s.traversal_time_s},
            {"final_s_mm", s.final_s_mm},
            {"total_distance_mm", s.total_distance_mm},
            {"max_abs_slip_mm_s", s.max_abs_slip_mm_s},
            {"max_compression_mm", s.max_compression_mm},
            {"ape_percent", vec_json(s.ape_percent)},
            {"segments", segments}};
}

std::string format_summary(const SimSummary& s) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-8s %-9s %9s %9s %10s %10s %10s %8s %8s %8s\n", "segment",
                  "kind", "entry_s", "exit_s", "vA_mm_s", "vB_mm_s", "vC_mm_s", "apeA_%",
                  "apeB_%", "apeC_%");
    out << line;
    for (const auto& seg : s.segments) {
        std::snprintf(line, sizeof line,
                      "%-8zu %-9s %9.2f %9.2f %10.4f %10.4f %10.4f %8.2e %8.2e %8.2e\n", seg.index,
                      seg.is_bend ? "bend" : "straight", seg.entry_time_s, seg.exit_time_s,
                      seg.mean_track_speed[0], seg.mean_track_speed[1], seg.mean_track_speed[2],
                      seg.ape_percent[0], seg.ape_percent[1], seg.ape_percent[2]);
        out << line;
    }
    out << "completed:        " << (s.completed ? "yes" : "no") << '\n'
        << "traversal time:   " << format_number(s.traversal_time_s) << " s\n"
        << "distance:         " << format_number(s.total_distance_mm) << " mm (robot length removed)\n"
        << "max |slip|:       " << format_number(s.max_abs_slip_mm_s) << " mm/s\n"
        << "max compression:  " << format_number(s.max_compression_mm) << " mm\n";
    return out.str();
}

int exit_code_for(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ParseError:
        case ErrorCode::ValidationError:
        case ErrorCode::InvalidConfig:
        case ErrorCode::EmptyNetwork:
        case ErrorCode::BadSegment:
        case ErrorCode::UnknownSize:
        case ErrorCode::EmptySweep:
            return 1;
        case ErrorCode::IoError:
            return 3;
        default:
            return 2;
    }
}

}  // namespace pipeclimb
