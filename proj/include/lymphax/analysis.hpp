#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lymphax/trajectory.hpp"

namespace lymphax {

struct CycleOptions {
  double onset = 0.05;      // s rising through this value starts a cycle
  double rearm = 0.01;      // s must fall below this before the next onset
  double transient = 30.0;  // s; onsets before this time are ignored
};

struct CycleRecord {
  double t_start = 0.0, t_end = 0.0;
  std::size_t first = 0, last = 0;  // snapshot range covering [t_start, t_end]
  double ESD = 0.0, EDD = 0.0;      // m
  double ESP = 0.0, EDP = 0.0;      // Pa
  double ESV = 0.0, EDV = 0.0;      // m^3
};

std::vector<double> detect_onsets(const Trajectory& traj, int vessel, const CycleOptions& opt = {});
std::vector<CycleRecord> detect_cycles(const Trajectory& traj, int vessel, const CycleOptions& opt = {});

// Indexes in display units.
struct IndexReport {
  bool contracting = false;
  int cycles = 0;
  double t_start = 0.0, t_end = 0.0;  // s, averaging window
  double frequency = 0.0;             // min^-1
  double EF = 0.0;
  double SV = 0.0;             // nL
  double FPF = 0.0;            // min^-1
  double CPF = 0.0;            // uL/h
  double CPFI = 0.0;
  double AMP = 0.0;            // um
  double SW = 0.0;             // nL cmH2O
  double mean_flow = 0.0;      // uL/h
  double mean_wss = 0.0;       // dyne/cm^2
  double mean_pressure = 0.0;  // cmH2O
  double peak_velocity = 0.0;  // mm/s
  double ESD = 0.0, EDD = 0.0; // um
  double ESP = 0.0, EDP = 0.0; // cmH2O
};

// Index names in report order with their units.
const std::vector<std::pair<std::string, std::string>>& index_fields();
std::vector<double> index_values(const IndexReport& report);
double index_value(const IndexReport& report, const std::string& name);

IndexReport compute_indexes(const std::vector<CycleRecord>& cycles, const Trajectory& traj, int vessel,
                            const CycleOptions& opt = {});
IndexReport analyse(const Trajectory& traj, int vessel, const CycleOptions& opt = {});

// Runs tasks 0..count-1 on up to `workers` threads; results are indexed by task.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

struct SensitivityProblem {
  std::vector<std::string> parameters;
  std::vector<double> reference;
  std::vector<double> signs;  // sgn(x) of each parameter's reference value
  std::vector<std::string> indexes;
  // Returns the index values, or nullopt when the run fails.
  std::function<std::optional<std::vector<double>>(const std::vector<double>&)> evaluate;
};

struct SensitivitySample {
  std::vector<double> point;           // randomised base point
  std::vector<std::vector<double>> S;  // parameters x indexes, NaN when missing
};

struct SensitivityOptions {
  double epsilon = 0.05;
  double spread = 0.3;  // base point drawn from [1 - spread, 1 + spread] x reference
  std::vector<int> active;  // parameters to differentiate; empty means all
  int workers = 1;
};

// One replicate: a random base point and the central-difference sensitivity matrix in percent.
SensitivitySample local_sensitivity(const SensitivityProblem& problem, const SensitivityOptions& opt,
                                    std::uint64_t seed);

std::vector<double> draw_base_point(const SensitivityProblem& problem, double spread, std::uint64_t seed);

SensitivitySample sensitivity_at(const SensitivityProblem& problem, const std::vector<double>& point,
                                 const SensitivityOptions& opt);

struct SensitivityResult {
  std::vector<std::vector<double>> mean;   // parameters x indexes
  std::vector<std::vector<double>> sigma;  // population SD after trimming
  std::vector<std::vector<int>> count;     // samples kept per entry
};

// Values inside the [lower, upper] percentile band, bounds included (linear interpolation).
std::vector<double> trim_percentiles(std::vector<double> values, double lower = 3.0, double upper = 97.0);
std::vector<double> trim_to_bounds(const std::vector<double>& values, double lo, double hi);
std::pair<double, double> percentile_bounds(std::vector<double> values, double lower = 3.0, double upper = 97.0);

SensitivityResult aggregate_sensitivity(const std::vector<std::vector<std::vector<double>>>& matrices);

}  // namespace lymphax
