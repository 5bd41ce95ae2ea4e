#include <cmath>

#include "doctest.h"
#include "lymphax/experiments.hpp"
#include "lymphax/units.hpp"

using namespace lymphax;

namespace {

std::vector<double> onsets_between(const Trajectory& traj, int vessel, double t0, double t1) {
  CycleOptions opt;
  opt.transient = 0.0;
  std::vector<double> out;
  for (double t : detect_onsets(traj, vessel, opt))
    if (t >= t0 && t <= t1) out.push_back(t);
  return out;
}

double mean_frequency(const std::vector<double>& onsets) {
  if (onsets.size() < 2) return 0.0;
  return 60.0 * (onsets.size() - 1) / (onsets.back() - onsets.front());
}

double max_xi(const Trajectory& traj, int slot, double t0, double t1) {
  double best = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (traj.time(i) >= t0 && traj.time(i) <= t1) best = std::max(best, traj.valve(i, slot).xi);
  return best;
}

}  // namespace

TEST_CASE("pressure programs") {
  const PressureProgram constant(250.0);
  CHECK(constant.is_constant());
  CHECK(constant(-1.0) == 250.0);
  CHECK(constant(1e6) == 250.0);
  const PressureProgram ramp({{10.0, 100.0}, {20.0, 300.0}, {30.0, 300.0}});
  CHECK(ramp(0.0) == 100.0);
  CHECK(ramp(15.0) == doctest::Approx(200.0));
  CHECK(ramp(25.0) == 300.0);
  CHECK(ramp(99.0) == 300.0);
  CHECK_THROWS_AS(PressureProgram({{1.0, 0.0}, {1.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(PressureProgram(std::vector<std::pair<double, double>>{}), ConfigError);
}

TEST_CASE("collector assembly") {
  Scenario s = healthy_collector_scenario();
  s.vessels[0].r0_um = 40.0;
  s.inlet_valve = true;
  s.normalise();
  const Collector c = s.build_collector();
  CHECK(c.size() == 3);
  CHECK(c.valves.size() == 4);
  CHECK(c.valves[0].has_value());
  CHECK_FALSE(c.valves[3].has_value());
  const double mean = 0.5 * (c.lymphangions[0].wall.A0() + c.lymphangions[1].wall.A0());
  CHECK(c.valves[1]->params.A0_ref == doctest::Approx(mean).epsilon(1e-14));
  CHECK(c.valves[0]->params.A0_ref == doctest::Approx(c.lymphangions[0].wall.A0()));

  Collector broken = c;
  broken.valves[1].reset();
  CHECK_THROWS_AS(broken.validate(), ConfigError);
  broken = c;
  broken.valves[2]->params.A0_ref *= 2.0;
  CHECK_THROWS_AS(broken.validate(), ConfigError);
}

TEST_CASE("simulation settings are validated") {
  SimConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.cells = 2;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.probes = {1.5};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.t_output = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("zero output time records the initial state only") {
  Scenario s = single_lymphangion_scenario();
  s.simulation.t_output = 0.0;
  Simulation sim(s.build_collector(), s.simulation.build());
  const Trajectory traj = sim.run();
  CHECK(traj.size() == 1);
  CHECK(traj.time(0) == 0.0);
  const double p0 = 3.0 * units::cmH2O;
  CHECK(traj.probe(0, 0, traj.probe_index(0.5)).p == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("rest state is a fixed point") {
  for (bool valves : {true, false}) {
    Scenario s = single_lymphangion_scenario(3.0, 3.0);
    s.inlet_valve = s.outlet_valve = valves;
    s.simulation.v0 = 0.0;
    s.normalise();
    Simulation sim(s.build_collector(), s.simulation.build());
    const ConservedField initial = sim.state().vessels[0].field;
    for (int k = 0; k < 2000; ++k) sim.step();
    const auto& field = sim.state().vessels[0].field;
    CHECK(((field.A - initial.A).abs() <= 1e-14 * initial.A).all());
    CHECK((field.q.abs() <= 1e-14 * initial.A.maxCoeff() * 1.0).all());
    CHECK(sim.state().vessels[0].efmc(kS) == 0.0);
  }
}

TEST_CASE("time stepping respects the output time") {
  Scenario s = single_lymphangion_scenario();
  s.simulation.t_output = 0.01;
  s.simulation.record_stride = 7;
  Simulation sim(s.build_collector(), s.simulation.build());
  const Trajectory traj = sim.run();
  CHECK(sim.state().t == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(traj.time(traj.size() - 1) == sim.state().t);
  for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj.time(i) > traj.time(i - 1));
  CHECK(sim.step(1e-7) == doctest::Approx(1e-7));
}

TEST_CASE("identical settings give bit-identical trajectories") {
  Scenario s = healthy_collector_scenario();
  s.simulation.t_output = 2.0;
  s.simulation.record_stride = 1;
  const Trajectory a = Simulation(s.build_collector(), s.simulation.build()).run();
  const Trajectory b = Simulation(s.build_collector(), s.simulation.build()).run();
  REQUIRE(a.size() == b.size());
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    identical = identical && a.time(i) == b.time(i) && a.volume(i, 1) == b.volume(i, 1) &&
                a.probe(i, 2, 1).q == b.probe(i, 2, 1).q && a.efmc(i, 0, kV) == b.efmc(i, 0, kV);
  }
  CHECK(identical);
}

TEST_CASE("single lymphangion pumps against an adverse gradient") {
  Scenario s = single_lymphangion_scenario(3.0, 4.0);
  s.simulation.t_output = 40.0;
  Simulation sim(s.build_collector(), s.simulation.build());
  const Trajectory traj = sim.run();
  CHECK(sim.fallback_count() == 0);
  const auto onsets = onsets_between(traj, 0, 0.0, 40.0);
  REQUIRE(onsets.size() >= 3);
  // the outlet valve opens during systole, the inlet valve while the vessel refills
  const double t0 = onsets[1], t1 = onsets[2];
  double out_open = -1.0, in_open = -1.0, peak_p = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.time(i);
    if (t < t0 || t > t1) continue;
    const double p = traj.probe(i, 0, traj.probe_index(1.0)).p;
    peak_p = std::max(peak_p, p);
    if (out_open < 0 && traj.valve(i, 1).xi > 0.5) out_open = t;
    if (out_open > 0 && in_open < 0 && traj.valve(i, 0).xi > 0.5) in_open = t;
  }
  CHECK(peak_p > 4.0 * units::cmH2O);
  CHECK(out_open > t0);
  CHECK(in_open > out_open);
  // shear stress is negative while fluid is ejected downstream
  int ejecting = 0, negative = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto outlet = traj.probe(i, 0, traj.probe_index(1.0));
    if (traj.time(i) < t0 || outlet.q < 1e-12) continue;
    ++ejecting;
    negative += outlet.tau < 0.0;
  }
  CHECK(ejecting > 0);
  CHECK(negative == ejecting);
}

TEST_CASE("healthy collector has no first-order fallbacks" * doctest::test_suite("long")) {
  Scenario s = healthy_collector_scenario();
  s.simulation.t_output = 20.0;
  Simulation sim(s.build_collector(), s.simulation.build());
  sim.run();
  CHECK(sim.fallback_count() == 0);
}

TEST_CASE("rising outlet pressure stops ejection" * doctest::test_suite("long")) {
  const Scenario s = ramp_scenario(true);
  const RunResult result = run_scenario(s);
  REQUIRE_FALSE(result.failure);
  const auto& traj = result.trajectory;
  CHECK(max_xi(traj, 2, 30.0, 100.0) > 0.9);
  // outlet pressure beyond 11.5 cmH2O from t = 162 s until the drop at 210 s
  CHECK(max_xi(traj, 2, 165.0, 209.0) < 0.5);
  CHECK(onsets_between(traj, 1, 165.0, 209.0).size() >= 2);
}

TEST_CASE("favourable gradient depresses the frequency" * doctest::test_suite("long")) {
  const Scenario s = ramp_scenario(false);
  const RunResult result = run_scenario(s);
  REQUIRE_FALSE(result.failure);
  const double adverse = mean_frequency(onsets_between(result.trajectory, 1, 35.0, 62.0));
  const double favourable = mean_frequency(onsets_between(result.trajectory, 1, 80.0, 134.0));
  MESSAGE("adverse " << adverse << " /min, favourable " << favourable << " /min");
  CHECK(adverse > 0.0);
  CHECK(favourable < 0.5 * adverse);
}

TEST_CASE("contractions propagate along ten lymphangions" * doctest::test_suite("long")) {
  const Scenario s = ten_lymphangion_scenario();
  const RunResult result = run_scenario(s);
  REQUIRE_FALSE(result.failure);
  for (int k = 0; k < 10; ++k) CHECK(onsets_between(result.trajectory, k, 0.0, 93.0).size() >= 3);
  CHECK(max_xi(result.trajectory, 10, 30.0, 93.0) > 0.9);
}
