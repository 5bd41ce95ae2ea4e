#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lymphax/collector.hpp"
#include "lymphax/hyperbolic.hpp"
#include "lymphax/trajectory.hpp"

namespace lymphax {

struct InitialConditions {
  std::optional<double> pressure;  // Pa; defaults to the inflow program at t = 0
  double v = 0.1;
  double w = 0.0;
  double I = 0.0;
  double s = 0.0;
  double q_v = 0.0;
  double xi = 0.0;
  bool operator==(const InitialConditions&) const = default;
};

struct SimConfig {
  double t_output = 100.0;
  double cfl = 0.9;
  int cells = 20;
  Limiter limiter = Limiter::Minmod;
  int record_stride = 10;
  std::vector<double> probes{0.0, 0.5, 1.0};
  bool record_fields = false;
  InitialConditions initial;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

struct VesselState {
  ConservedField field;
  EfmcStated efmc;
};

struct CollectorState {
  double t = 0.0;
  long steps = 0;
  std::vector<VesselState> vessels;
  std::vector<ValveStated> valves;  // one per slot; empty slots stay zero
  std::vector<double> valve_dp;
};

class SimulationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class Simulation {
 public:
  Simulation(Collector collector, SimConfig config);

  const Collector& collector() const { return collector_; }
  const SimConfig& config() const { return config_; }
  const std::vector<Grid1D>& grids() const { return grids_; }
  const CollectorState& state() const { return state_; }
  CollectorState& state() { return state_; }
  int fallback_count() const { return fallbacks_; }

  // Advances by one CFL step, shortened to max_dt if needed. Returns the step used.
  double step(double max_dt = std::numeric_limits<double>::infinity());

  double cfl_step() const;
  double pressure(int vessel, int cell) const;

  // Advances to t_output, appending snapshots to out. On failure the partial
  // trajectory stays in out and SimulationError is thrown.
  void run(Trajectory& out);
  Trajectory run();

  Trajectory make_trajectory() const;
  void record(Trajectory& out) const;

 private:
  Collector collector_;
  SimConfig config_;
  std::vector<Grid1D> grids_;
  CollectorState state_;
  std::vector<Eigen::Array2Xd> fluxes_;
  std::vector<ConservedField> scratch_;
  int fallbacks_ = 0;
};

}  // namespace lymphax
