#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ihl/hopflax.hpp"
#include "ihl/lipschitz.hpp"
#include "ihl/scenario.hpp"
#include "ihl/theorems.hpp"

namespace ihl {

inline constexpr int kSchemaVersion = 1;

/// Parses a scenario document. Any problem raises kInvalidScenario with the
/// offending field path (and line/column for syntax errors).
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Deterministic serialization; save(load(x)) is byte-stable.
std::string dump_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

/// t, y_index, value, d_minus, d_plus, argmin_size; 17 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const SemigroupPoint> cells);

std::string slope_report_json(const SlopeReport& report);
/// index, slope, slope_asymptotic.
void write_slope_csv(std::ostream& out, const SlopeReport& report);

std::string theorem_reports_json(std::span<const TheoremReport> reports);
/// theorem_id, scenarios passed/total, worst margin.
std::string summary_table(std::span<const TheoremReport> reports);

/// Shortest round-trip text for a double ("inf"/"nan" spelled out).
std::string format_double(double x);

}  // namespace ihl
