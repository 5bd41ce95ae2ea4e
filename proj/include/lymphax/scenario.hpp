#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lymphax/analysis.hpp"
#include "lymphax/collector.hpp"
#include "lymphax/simulation.hpp"

namespace lymphax {

// Per-lymphangion settings in file units (um, mm, cmH2O, dyne/cm^2, min^-1).
struct VesselSettings {
  double r0_um = 47.7;
  double h0_ratio = 0.3;
  double length_mm = 1.5;
  double p_e_cmH2O = 0.0;
  double E_min = 35000.0;
  double E_max = 135000.0;
  double nu = 0.5;
  double m = 0.5;
  double n = -5.0;
  double z = 19.0;
  double C = 1e-16;
  double rho = 998.0;
  double mu = 1e-3;
  double gamma = 2.0;
  double a1 = 100.0;
  double a2 = 0.5;
  double a3 = 25.0;
  double b1 = 3.0;
  double c1 = 110.0;
  double c2 = 3.0;
  double R_I = 0.1;
  double k_rel = 10.0;
  double n_Ca = 10.0;
  double A_Ca_ratio = 7.75;
  double k_NO = 0.8;
  double tau_NO_dyne_cm2 = 6.0;
  double n_NO = 1.2;
  double f_min_per_min = 3.0;
  double f_Ca_per_min = 20.0;
  double t_excited = 2.0;

  Lymphangion build() const;
  bool operator==(const VesselSettings&) const = default;
};

struct ValveSettings {
  double K_vo = 10.0;
  double K_vc = 10.0;
  double dp_open_cmH2O = 0.0;
  double dp_close_cmH2O = 0.0;
  double M_st = 1.0;
  double M_rg = 0.0;
  double L_eff_mm = 0.1;

  ValveParamsd build() const;
  bool operator==(const ValveSettings&) const = default;
};

template <typename Settings>
struct SettingsField {
  const char* key;
  double Settings::*member;
};

const std::vector<SettingsField<VesselSettings>>& vessel_fields();
const std::vector<SettingsField<ValveSettings>>& valve_fields();

struct ProgramSettings {
  std::vector<std::pair<double, double>> breakpoints_cmH2O{{0.0, 0.0}};  // (s, cmH2O)
  PressureProgram build() const;
  static ProgramSettings constant(double p_cmH2O) { return {{{0.0, p_cmH2O}}}; }
  bool operator==(const ProgramSettings&) const = default;
};

struct SimSettings {
  double t_output = 100.0;
  double cfl = 0.9;
  int cells = 20;
  std::string limiter = "minmod";
  int record_stride = 10;
  std::vector<double> probes{0.0, 0.5, 1.0};
  bool record_fields = false;
  std::uint64_t seed = 1;
  double v0 = 0.1, w0 = 0.0, I0 = 0.0, s0 = 0.0, q_v0 = 0.0, xi0 = 0.0;
  std::optional<double> p0_cmH2O;

  SimConfig build() const;
  bool operator==(const SimSettings&) const = default;
};

struct AnalysisSettings {
  std::optional<int> vessel;  // defaults to the middle lymphangion
  double transient = 30.0;
  double onset = 0.05;
  double rearm = 0.01;

  CycleOptions cycle_options() const { return {onset, rearm, transient}; }
  bool operator==(const AnalysisSettings&) const = default;
};

struct Range {
  double from = 0.0;
  double to = 9.0;
  int count = 10;
  std::vector<double> values() const;
  bool operator==(const Range&) const = default;
};

struct SweepSettings {
  Range P_in_cmH2O;
  Range P_out_cmH2O;
  bool operator==(const SweepSettings&) const = default;
};

struct SensitivitySettings {
  int replicates = 50;
  double epsilon = 0.05;
  double spread = 0.3;
  std::vector<std::string> parameters;  // all when empty
  std::vector<std::string> differentiate;  // subset to perturb; all when empty
  std::vector<std::string> indexes;     // the standard twelve when empty
  bool operator==(const SensitivitySettings&) const = default;
};

struct RiemannSettings {
  double A_L_ratio = 4.0;
  double A_R_ratio = 3.0;
  double u_L = 0.0;
  double u_R = 0.0;
  double t_end = 0.0015;
  std::vector<int> cells{40, 1000};
  bool operator==(const RiemannSettings&) const = default;
};

struct ValveStudySettings {
  int valve = 2;
  std::string parameter = "M_st";
  std::vector<double> values{1.0, 0.5, 0.1};
  std::vector<double> frequencies_per_min;  // sets f_min = f_Ca per run when given
  bool operator==(const ValveStudySettings&) const = default;
};

enum class Experiment { Run, Riemann, Sweep, Sensitivity, ValveStudy };
std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct Scenario {
  std::string name = "scenario";
  Experiment experiment = Experiment::Run;
  int lymphangions = 1;
  bool inlet_valve = true;
  bool outlet_valve = true;
  VesselSettings vessel_defaults;
  ValveSettings valve_defaults;
  std::vector<VesselSettings> vessels;  // size lymphangions
  std::vector<ValveSettings> valves;    // size lymphangions + 1
  ProgramSettings inflow = ProgramSettings::constant(3.0);
  ProgramSettings outflow = ProgramSettings::constant(4.0);
  SimSettings simulation;
  AnalysisSettings analysis;
  SweepSettings sweep;
  SensitivitySettings sensitivity;
  RiemannSettings riemann;
  ValveStudySettings valve_study;

  // Resizes vessel/valve lists to the topology, filling with defaults.
  void normalise();
  Collector build_collector() const;
  int analysis_vessel() const { return analysis.vessel.value_or(lymphangions / 2); }
  bool operator==(const Scenario&) const = default;
};

// Sets a named parameter on every lymphangion or valve (vessel or valve settings key).
void set_parameter(Scenario& scenario, const std::string& key, double value);
double get_parameter(const Scenario& scenario, const std::string& key);
bool is_parameter(const std::string& key);

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
std::string serialize_scenario(const Scenario& scenario);

// %.17g formatting used in every CSV file.
std::string format_number(double value);

}  // namespace lymphax
