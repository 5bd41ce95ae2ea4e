#include "lymphax/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "lymphax/errors.hpp"

namespace lymphax {

Scenario healthy_collector_scenario(double P_in, double P_out) {
  Scenario s;
  s.name = "healthy_collector";
  s.lymphangions = 3;
  s.inlet_valve = false;
  s.outlet_valve = false;
  s.inflow = ProgramSettings::constant(P_in);
  s.outflow = ProgramSettings::constant(P_out);
  s.normalise();
  return s;
}

Scenario single_lymphangion_scenario(double P_in, double P_out) {
  Scenario s;
  s.name = "single_lymphangion";
  s.lymphangions = 1;
  s.inlet_valve = true;
  s.outlet_valve = true;
  s.inflow = ProgramSettings::constant(P_in);
  s.outflow = ProgramSettings::constant(P_out);
  s.normalise();
  return s;
}

Scenario ten_lymphangion_scenario() {
  Scenario s;
  s.name = "ten_lymphangions";
  s.lymphangions = 10;
  s.inlet_valve = true;
  s.outlet_valve = true;
  s.inflow = ProgramSettings::constant(4.0);
  s.outflow = ProgramSettings::constant(4.0);
  s.simulation.t_output = 93.0;
  s.normalise();
  return s;
}

Scenario ramp_scenario(bool rising_inflow) {
  Scenario s = healthy_collector_scenario();
  if (rising_inflow) {
    s.name = "pressure_ramp";
    s.inflow = ProgramSettings::constant(3.0);
    s.outflow.breakpoints_cmH2O = {{0.0, 3.0}, {60.0, 3.0}, {180.0, 13.0}, {210.0, 13.0}, {210.001, 3.0}};
    s.simulation.t_output = 270.0;
  } else {
    s.name = "wss_ramp";
    s.inflow = ProgramSettings::constant(3.5);
    s.outflow.breakpoints_cmH2O = {{0.0, 3.5},  {20.0, 3.5},  {32.0, 8.0},  {62.0, 8.0},
                                   {74.0, 1.0}, {134.0, 1.0}, {146.0, 3.5}};
    s.simulation.t_output = 166.0;
  }
  return s;
}

RunResult run_scenario(const Scenario& scenario) {
  Simulation sim(scenario.build_collector(), scenario.simulation.build());
  RunResult result;
  result.trajectory = sim.make_trajectory();
  try {
    sim.run(result.trajectory);
  } catch (const SimulationError& e) {
    result.failure = e.what();
  }
  result.steps = sim.state().steps;
  result.fallbacks = sim.fallback_count();
  result.report = analyse(result.trajectory, scenario.analysis_vessel(), scenario.analysis.cycle_options());
  return result;
}

IndexReport scenario_indexes(const Scenario& scenario) {
  Simulation sim(scenario.build_collector(), scenario.simulation.build());
  const Trajectory traj = sim.run();
  return analyse(traj, scenario.analysis_vessel(), scenario.analysis.cycle_options());
}

RiemannRun riemann_run(const RiemannSolution& exact, const VesselWalld& wall, const RiemannSettings& settings,
                       int cells, double cfl, Limiter limiter) {
  const double L = wall.geometry().length;
  const double A0 = wall.A0();
  const Grid1D grid = Grid1D::uniform(L, cells);
  RiemannRun run;
  run.cells = cells;
  run.x = grid.cell_centers();

  ConservedField field(cells, 0.0, 0.0);
  for (int i = 0; i < cells; ++i) {
    const bool left = run.x(i) < 0.5 * L;
    field.A(i) = (left ? settings.A_L_ratio : settings.A_R_ratio) * A0;
    field.q(i) = field.A(i) * (left ? settings.u_L : settings.u_R);
  }
  Eigen::Array2Xd fluxes(2, cells + 1);
  double t = 0.0;
  while (t < settings.t_end) {
    const auto step = transmissive_step(field, grid.dx, wall, 0.0, cfl, limiter, settings.t_end - t, fluxes);
    t = step.dt >= settings.t_end - t ? settings.t_end : t + step.dt;
    ++run.steps;
  }

  run.A_exact.resize(cells);
  run.u_exact.resize(cells);
  for (int i = 0; i < cells; ++i) {
    const Eigen::Vector2d Au = sample(exact, wall, (run.x(i) - 0.5 * L) / settings.t_end);
    run.A_exact(i) = Au(0);
    run.u_exact(i) = Au(1);
  }
  run.A_numerical = field.A;
  run.u_numerical = field.q / field.A;
  run.L1_area_ratio = ((run.A_numerical - run.A_exact).abs() / A0).mean();
  run.L1_velocity = (run.u_numerical - run.u_exact).abs().mean();
  return run;
}

RiemannComparison riemann_comparison(const Scenario& scenario) {
  if (scenario.lymphangions != 1 || scenario.inlet_valve || scenario.outlet_valve)
    throw ConfigError("the Riemann experiment needs a single lymphangion without valves");
  const VesselSettings& v = scenario.vessels.empty() ? scenario.vessel_defaults : scenario.vessels.front();
  if (v.mu != 0.0) throw ConfigError("the Riemann experiment needs mu = 0");
  const auto& rs = scenario.riemann;
  if (rs.cells.empty()) throw ConfigError("the Riemann experiment needs at least one grid size");

  const VesselWalld wall = v.build().wall;
  RiemannComparison cmp;
  cmp.A0 = wall.A0();
  cmp.length = wall.geometry().length;
  cmp.exact = solve_riemann({rs.A_L_ratio * cmp.A0, rs.u_L, rs.A_R_ratio * cmp.A0, rs.u_R}, wall, 0.0);
  const Limiter limiter = limiter_from_string(scenario.simulation.limiter);
  for (int cells : rs.cells) cmp.runs.push_back(riemann_run(cmp.exact, wall, rs, cells, scenario.simulation.cfl, limiter));
  return cmp;
}

std::vector<SweepPoint> run_sweep(const Scenario& scenario, int workers) {
  std::vector<SweepPoint> points;
  for (double P_in : scenario.sweep.P_in_cmH2O.values())
    for (double P_out : scenario.sweep.P_out_cmH2O.values()) points.push_back({P_in, P_out, std::nullopt, {}});

  parallel_for(points.size(), workers, [&](std::size_t k) {
    auto& point = points[k];
    Scenario copy = scenario;
    copy.inflow = ProgramSettings::constant(point.P_in);
    copy.outflow = ProgramSettings::constant(point.P_out);
    try {
      point.report = scenario_indexes(copy);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  });
  return points;
}

const std::vector<std::string>& default_sensitivity_parameters() {
  static const std::vector<std::string> names = {
      "r0_um", "a1",         "a2",    "a3",  "b1",   "c1",   "c2",        "R_I",
      "k_rel", "n_Ca",       "A_Ca_ratio", "k_NO", "tau_NO_dyne_cm2", "n_NO", "K_vo", "K_vc",
      "L_eff_mm", "rho",     "mu",    "gamma", "E_max", "E_min"};
  return names;
}

const std::vector<std::string>& default_sensitivity_indexes() {
  static const std::vector<std::string> names = {"frequency", "EF",  "SV",  "FPF", "CPF",           "mean_wss",
                                                 "ESD",       "EDD", "ESP", "EDP", "mean_pressure", "mean_flow"};
  return names;
}

SensitivityStudy run_sensitivity(const Scenario& scenario, std::uint64_t seed, int workers,
                                 const ProgressCallback& progress) {
  const auto& settings = scenario.sensitivity;
  SensitivityStudy study;
  study.seed = seed;
  study.parameters = settings.parameters.empty() ? default_sensitivity_parameters() : settings.parameters;
  study.indexes = settings.indexes.empty() ? default_sensitivity_indexes() : settings.indexes;
  for (const auto& p : study.parameters) study.reference.push_back(get_parameter(scenario, p));

  SensitivityOptions opt;
  opt.epsilon = settings.epsilon;
  opt.spread = settings.spread;
  opt.workers = workers;
  for (const auto& name : settings.differentiate) {
    const auto it = std::find(study.parameters.begin(), study.parameters.end(), name);
    if (it == study.parameters.end()) throw ConfigError("differentiated parameter '" + name + "' is not sampled");
    opt.active.push_back(static_cast<int>(it - study.parameters.begin()));
  }
  study.differentiated = settings.differentiate.empty() ? study.parameters : settings.differentiate;

  SensitivityProblem problem;
  problem.parameters = study.parameters;
  problem.reference = study.reference;
  for (double r : study.reference) problem.signs.push_back(r < 0 ? -1.0 : 1.0);
  problem.indexes = study.indexes;
  problem.evaluate = [&](const std::vector<double>& point) -> std::optional<std::vector<double>> {
    Scenario copy = scenario;
    for (std::size_t i = 0; i < point.size(); ++i) set_parameter(copy, study.parameters[i], point[i]);
    const IndexReport report = scenario_indexes(copy);
    std::vector<double> values;
    for (const auto& name : study.indexes) values.push_back(index_value(report, name));
    return values;
  };

  for (int r = 0; r < settings.replicates; ++r) {
    study.samples.push_back(local_sensitivity(problem, opt, seed + static_cast<std::uint64_t>(r)));
    if (progress) progress(r + 1, settings.replicates);
  }
  std::vector<std::vector<std::vector<double>>> matrices;
  for (const auto& sample : study.samples) matrices.push_back(sample.S);
  study.result = aggregate_sensitivity(matrices);
  return study;
}

std::vector<ValveStudyPoint> run_valve_study(const Scenario& scenario, int workers) {
  const auto& vs = scenario.valve_study;
  std::vector<ValveStudyPoint> points;
  if (vs.frequencies_per_min.empty()) {
    for (double value : vs.values) points.push_back({value, std::nullopt, std::nullopt, {}});
  } else {
    for (double f : vs.frequencies_per_min)
      for (double value : vs.values) points.push_back({value, f, std::nullopt, {}});
  }

  parallel_for(points.size(), workers, [&](std::size_t k) {
    auto& point = points[k];
    Scenario copy = scenario;
    auto& valve = copy.valves.at(vs.valve);
    (vs.parameter == "M_rg" ? valve.M_rg : valve.M_st) = point.value;
    if (point.frequency_per_min) {
      set_parameter(copy, "f_min_per_min", *point.frequency_per_min);
      set_parameter(copy, "f_Ca_per_min", *point.frequency_per_min);
    }
    try {
      if (!(valve.M_rg >= 0.0 && valve.M_rg <= valve.M_st && valve.M_st <= 1.0))
        throw ConfigError("valve requires 0 <= M_rg <= M_st <= 1");
      point.report = scenario_indexes(copy);
    } catch (const std::exception& e) {
      point.error = e.what();
    }
  });
  return points;
}

}  // namespace lymphax
