#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lymphax/efmc.hpp"
#include "lymphax/valve.hpp"
#include "lymphax/vessel_wall.hpp"

namespace lymphax {

// Piecewise-linear pressure schedule in Pa, held constant outside its breakpoints.
class PressureProgram {
 public:
  PressureProgram() : PressureProgram(0.0) {}
  explicit PressureProgram(double constant);
  explicit PressureProgram(std::vector<std::pair<double, double>> breakpoints);

  double operator()(double t) const;
  bool is_constant() const { return breakpoints_.size() == 1; }
  const std::vector<std::pair<double, double>>& breakpoints() const { return breakpoints_; }
  bool operator==(const PressureProgram&) const = default;

 private:
  std::vector<std::pair<double, double>> breakpoints_;
};

struct Lymphangion {
  VesselWalld wall;
  EfmcParamsd efmc;  // with k_Ca1, k_Ca2 already derived
};

struct ValveSite {
  ValveParamsd params;
  LymphPropertiesd fluid;
};

// Chain of N lymphangions with N + 1 valve slots; slot k sits at the left end of lymphangion k.
// Terminal slots may be empty, in which case the pressure program acts on the vessel directly.
struct Collector {
  std::vector<Lymphangion> lymphangions;
  std::vector<std::optional<ValveSite>> valves;
  PressureProgram inflow;
  PressureProgram outflow;

  int size() const { return static_cast<int>(lymphangions.size()); }
  void validate() const;
};

// Assembles a collector, deriving each valve's reference area from its neighbours.
Collector make_collector(std::vector<Lymphangion> lymphangions, bool inlet_valve, bool outlet_valve,
                         const std::vector<ValveParamsd>& valve_params, PressureProgram inflow,
                         PressureProgram outflow);

}  // namespace lymphax
