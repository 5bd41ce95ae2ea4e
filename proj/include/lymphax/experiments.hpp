#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lymphax/analysis.hpp"
#include "lymphax/riemann.hpp"
#include "lymphax/scenario.hpp"
#include "lymphax/simulation.hpp"

namespace lymphax {

// Reference scenarios.
Scenario healthy_collector_scenario(double P_in = 3.0, double P_out = 6.0);  // 3 lymphangions, 2 valves
Scenario single_lymphangion_scenario(double P_in = 3.0, double P_out = 4.0);  // 2 terminal valves
Scenario ten_lymphangion_scenario();                                          // 11 valves, P_in = P_out = 4
Scenario ramp_scenario(bool rising_inflow);                                   // test cases 2 and 3

struct RunResult {
  Trajectory trajectory;
  IndexReport report;
  long steps = 0;
  int fallbacks = 0;
  std::optional<std::string> failure;  // set when the run stopped early
};

// Runs the scenario and analyses its analysis vessel. Numerical failures are captured in `failure`.
RunResult run_scenario(const Scenario& scenario);

// Index values only; throws on numerical failure.
IndexReport scenario_indexes(const Scenario& scenario);

struct RiemannRun {
  int cells = 0;
  Eigen::ArrayXd x;  // cell centres, m
  Eigen::ArrayXd A_exact, u_exact, A_numerical, u_numerical;  // A in m^2, u in m/s
  double L1_area_ratio = 0.0;  // mean |A - A_exact| / A0
  double L1_velocity = 0.0;    // mean |u - u_exact|, m/s
  long steps = 0;
};

struct RiemannComparison {
  RiemannSolution exact;
  double A0 = 0.0;
  double length = 0.0;
  std::vector<RiemannRun> runs;
};

// Exact solution and SLIC runs for the scenario's Riemann problem (jump at L/2, transmissive ends).
RiemannComparison riemann_comparison(const Scenario& scenario);
RiemannRun riemann_run(const RiemannSolution& exact, const VesselWalld& wall, const RiemannSettings& settings,
                       int cells, double cfl, Limiter limiter);

struct SweepPoint {
  double P_in = 0.0, P_out = 0.0;  // cmH2O
  std::optional<IndexReport> report;
  std::string error;
};

std::vector<SweepPoint> run_sweep(const Scenario& scenario, int workers);

struct SensitivityStudy {
  std::vector<std::string> parameters;
  std::vector<double> reference;
  std::vector<std::string> indexes;
  std::vector<std::string> differentiated;
  std::uint64_t seed = 0;
  std::vector<SensitivitySample> samples;
  SensitivityResult result;
};

// Parameters and indexes used when a sensitivity block leaves them empty.
const std::vector<std::string>& default_sensitivity_parameters();
const std::vector<std::string>& default_sensitivity_indexes();

using ProgressCallback = std::function<void(int done, int total)>;

SensitivityStudy run_sensitivity(const Scenario& scenario, std::uint64_t seed, int workers,
                                 const ProgressCallback& progress = {});

struct ValveStudyPoint {
  double value = 0.0;                       // M_st or M_rg of the studied valve
  std::optional<double> frequency_per_min;  // f_min = f_Ca when set
  std::optional<IndexReport> report;
  std::string error;
};

std::vector<ValveStudyPoint> run_valve_study(const Scenario& scenario, int workers);

}  // namespace lymphax
