#include "lymphax/collector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lymphax {

PressureProgram::PressureProgram(double constant) : breakpoints_{{0.0, constant}} {}

PressureProgram::PressureProgram(std::vector<std::pair<double, double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw ConfigError("pressure program needs at least one breakpoint");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i].first > breakpoints_[i - 1].first))
      throw ConfigError("pressure program breakpoint times must be strictly increasing");
}

double PressureProgram::operator()(double t) const {
  if (t <= breakpoints_.front().first) return breakpoints_.front().second;
  if (t >= breakpoints_.back().first) return breakpoints_.back().second;
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t,
                                   [](double value, const auto& bp) { return value < bp.first; });
  const auto& [t1, p1] = *it;
  const auto& [t0, p0] = *(it - 1);
  return p0 + (p1 - p0) * (t - t0) / (t1 - t0);
}

void Collector::validate() const {
  const int N = size();
  if (N < 1) throw ConfigError("collector needs at least one lymphangion");
  if (static_cast<int>(valves.size()) != N + 1) throw ConfigError("collector needs N + 1 valve slots");
  for (int k = 1; k < N; ++k)
    if (!valves[k]) throw ConfigError("interior valve " + std::to_string(k) + " is missing");
  for (const auto& v : lymphangions) v.efmc.validate();
  for (int k = 0; k <= N; ++k) {
    if (!valves[k]) continue;
    valves[k]->params.validate();
    double expected = 0.0;
    if (k == 0)
      expected = lymphangions.front().wall.A0();
    else if (k == N)
      expected = lymphangions.back().wall.A0();
    else
      expected = 0.5 * (lymphangions[k - 1].wall.A0() + lymphangions[k].wall.A0());
    if (std::abs(valves[k]->params.A0_ref - expected) > 1e-12 * expected)
      throw ConfigError("valve " + std::to_string(k) + " reference area differs from its neighbours' mean");
  }
}

Collector make_collector(std::vector<Lymphangion> lymphangions, bool inlet_valve, bool outlet_valve,
                         const std::vector<ValveParamsd>& valve_params, PressureProgram inflow,
                         PressureProgram outflow) {
  Collector c;
  c.lymphangions = std::move(lymphangions);
  c.inflow = std::move(inflow);
  c.outflow = std::move(outflow);
  const int N = c.size();
  if (static_cast<int>(valve_params.size()) != N + 1) throw ConfigError("valve parameter list needs N + 1 entries");
  c.valves.resize(N + 1);
  for (int k = 0; k <= N; ++k) {
    if ((k == 0 && !inlet_valve) || (k == N && !outlet_valve)) continue;
    ValveSite site{valve_params[k], {}};
    if (k == 0) {
      site.params.A0_ref = c.lymphangions.front().wall.A0();
      site.fluid = c.lymphangions.front().wall.properties();
    } else if (k == N) {
      site.params.A0_ref = c.lymphangions.back().wall.A0();
      site.fluid = c.lymphangions.back().wall.properties();
    } else {
      site.params.A0_ref = 0.5 * (c.lymphangions[k - 1].wall.A0() + c.lymphangions[k].wall.A0());
      site.fluid = c.lymphangions[k - 1].wall.properties();
    }
    c.valves[k] = site;
  }
  c.validate();
  return c;
}

}  // namespace lymphax
