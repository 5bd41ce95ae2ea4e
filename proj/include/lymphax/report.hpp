#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lymphax/experiments.hpp"

namespace lymphax {

// CSV tables use a header row with units in brackets, comma separators and LF line ends.
// Numbers are written with format_number (17 significant digits).

// Long format: one row per (time, entity, quantity). Rows start after the initial snapshot.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// One row per probe sample of the full per-cell fields (only when fields were recorded).
void write_fields_csv(std::ostream& os, const Trajectory& traj, const std::vector<double>& dx);

void write_index_csv_header(std::ostream& os, const std::vector<std::string>& leading);
void write_index_csv_row(std::ostream& os, const IndexReport& report);

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);
void write_valve_study_csv(std::ostream& os, const ValveStudyPoint* points, std::size_t count, int valve,
                           const std::string& parameter);
void write_riemann_csv(std::ostream& os, const RiemannComparison& cmp);
void write_riemann_errors_csv(std::ostream& os, const RiemannComparison& cmp);

void write_sensitivity_summary_csv(std::ostream& os, const SensitivityStudy& study);  // long: parameter x index
void write_sensitivity_table_csv(std::ostream& os, const SensitivityStudy& study);    // one row per parameter
void write_sensitivity_points_csv(std::ostream& os, const SensitivityStudy& study);   // sampled base points
void write_sensitivity_replicate_csv(std::ostream& os, const SensitivityStudy& study, std::size_t replicate);

// JSON documents with a stable key order.
std::string index_report_json(const Scenario& scenario, const RunResult& result);
std::string riemann_json(const RiemannComparison& cmp);
std::string sensitivity_json(const SensitivityStudy& study);

}  // namespace lymphax
