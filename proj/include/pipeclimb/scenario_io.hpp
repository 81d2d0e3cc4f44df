#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"

#include "pipeclimb/simulator.hpp"

namespace pipeclimb {

/// Scenario files are JSON with four top-level objects (pipe, robot,
/// transmission, sim). Every physical key carries its unit as a suffix.
/// Unknown keys are rejected. Errors: ParseError (with line number),
/// ValidationError (with key path), CompressionLimit, IoError.
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_text(std::string_view text);

/// Canonical document: every key written, pipe size as inner_radius_mm.
nlohmann::json scenario_to_json(const Scenario& scenario);

enum class RecordFormat { Csv, Json };

/// Throws ValidationError for anything but "csv" / "json".
RecordFormat parse_record_format(std::string_view name);

inline constexpr std::array<std::string_view, 16> kRecordColumns = {
    "t_s",        "s_mm",       "segment",    "vA_mm_s",    "vB_mm_s",    "vC_mm_s",
    "vreqA_mm_s", "vreqB_mm_s", "vreqC_mm_s", "slipA_mm_s", "slipB_mm_s", "slipC_mm_s",
    "xA_mm",      "xB_mm",      "xC_mm",      "torque_nm"};

void emit_records(std::span<const SimRecord> records, RecordFormat format, std::ostream& out);

/// Throws IoError when the file cannot be written.
void emit_records(std::span<const SimRecord> records, RecordFormat format,
                  const std::filesystem::path& destination);

nlohmann::json summary_to_json(const SimSummary& summary);

/// Plain-text report: timings, per-segment speeds and APE, slip, compression.
std::string format_summary(const SimSummary& summary);

/// 1 validation/parse, 2 simulation limits, 3 I/O.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace pipeclimb
