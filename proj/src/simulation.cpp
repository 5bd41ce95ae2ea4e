#include "lymphax/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lymphax/coupling.hpp"

namespace lymphax {

void SimConfig::validate() const {
  if (!(t_output >= 0)) throw ConfigError("t_output must be non-negative");
  if (!(cfl > 0 && cfl < 1)) throw ConfigError("CFL must lie in (0, 1)");
  if (cells < 3) throw ConfigError("at least 3 cells per lymphangion are required");
  if (record_stride < 1) throw ConfigError("record stride must be at least 1");
  for (double f : probes)
    if (!(f >= 0 && f <= 1)) throw ConfigError("probe positions are fractions of the length in [0, 1]");
  if (!(initial.s >= 0 && initial.s <= 1) || !(initial.xi >= 0 && initial.xi <= 1) || initial.I < 0)
    throw ConfigError("initial s and xi must lie in [0, 1] and I must be non-negative");
}

Simulation::Simulation(Collector collector, SimConfig config)
    : collector_(std::move(collector)), config_(std::move(config)) {
  collector_.validate();
  config_.validate();
  const int N = collector_.size();
  const double p0 = config_.initial.pressure.value_or(collector_.inflow(0.0));
  for (const auto& v : collector_.lymphangions) {
    grids_.push_back(Grid1D::uniform(v.wall.geometry().length, config_.cells));
    const double A = v.wall.area_from_pressure(p0, config_.initial.s);
    VesselState vs{ConservedField(config_.cells, A, 0.0),
                   EfmcStated(config_.initial.v, config_.initial.w, config_.initial.I, config_.initial.s)};
    state_.vessels.push_back(std::move(vs));
    fluxes_.emplace_back(2, config_.cells + 1);
  }
  scratch_.resize(N);
  state_.valves.assign(N + 1, ValveStated::Zero());
  state_.valve_dp.assign(N + 1, 0.0);
  for (int k = 0; k <= N; ++k)
    if (collector_.valves[k]) state_.valves[k] = ValveStated(config_.initial.q_v, config_.initial.xi);
}

double Simulation::pressure(int vessel, int cell) const {
  const auto& vs = state_.vessels[vessel];
  return collector_.lymphangions[vessel].wall.pressure(vs.field.A(cell), vs.efmc(kS));
}

double Simulation::cfl_step() const {
  std::vector<CflInput> inputs;
  inputs.reserve(state_.vessels.size());
  for (std::size_t k = 0; k < state_.vessels.size(); ++k)
    inputs.push_back({&state_.vessels[k].field, &collector_.lymphangions[k].wall, state_.vessels[k].efmc(kS),
                      grids_[k].dx});
  return cfl_dt(inputs, config_.cfl);
}

double Simulation::step(double max_dt) {
  const int N = collector_.size();
  const double t = state_.t;
  const double dt = std::min(cfl_step(), max_dt);
  const double P_in = collector_.inflow(t);
  const double P_out = collector_.outflow(t);

  try {
    for (int k = 0; k <= N; ++k) {
      if (!collector_.valves[k]) continue;
      const auto& site = *collector_.valves[k];
      std::optional<double> up, down;
      if (k > 0) up = pressure(k - 1, grids_[k - 1].M - 1);
      if (k < N) down = pressure(k, 0);
      const double dp = assemble_dp(up, down, P_in, P_out);
      state_.valve_dp[k] = dp;
      state_.valves[k] = valve_step(state_.valves[k], dp, site.params, site.fluid, dt);
    }

    for (int k = 0; k < N; ++k) {
      const auto& wall = collector_.lymphangions[k].wall;
      const auto& field = state_.vessels[k].field;
      const double s = state_.vessels[k].efmc(kS);
      const int M = grids_[k].M;
      const FluxContext ctx(wall, s);
      auto& F = fluxes_[k];

      const double A_first = field.A(0), u_first = field.q(0) / field.A(0);
      const BoundaryState left =
          collector_.valves[k]
              ? boundary_state_from_valve_flow(state_.valves[k](kQv), A_first, u_first, BoundarySide::DownstreamLeft,
                                               wall, s)
              : boundary_state_from_pressure(P_in, A_first, u_first, BoundarySide::DownstreamLeft, wall, s);
      F.col(0) = ctx.flux(Vector2d(left.A, left.q));

      const double A_last = field.A(M - 1), u_last = field.q(M - 1) / field.A(M - 1);
      const BoundaryState right =
          collector_.valves[k + 1]
              ? boundary_state_from_valve_flow(state_.valves[k + 1](kQv), A_last, u_last,
                                               BoundarySide::UpstreamRight, wall, s)
              : boundary_state_from_pressure(P_out, A_last, u_last, BoundarySide::UpstreamRight, wall, s);
      F.col(M) = ctx.flux(Vector2d(right.A, right.q));

      fallbacks_ += muscl_hancock_step(field, dt, grids_[k].dx, ctx, config_.limiter, F);
    }

    for (int k = 0; k < N; ++k) {
      auto& field = state_.vessels[k].field;
      auto& next = scratch_[k];
      next = field;
      conservative_update(next, fluxes_[k], dt, grids_[k].dx);
      apply_source(next, field, fluxes_[k], dt, grids_[k].dx, collector_.lymphangions[k].wall);
      for (int i = 0; i < next.size(); ++i) {
        if (!(next.A(i) > 0.0) || !std::isfinite(next.q(i))) {
          std::ostringstream msg;
          msg << "non-positive area in lymphangion " << k << " cell " << i << " at t = " << t + dt;
          throw SimulationError(msg.str());
        }
      }
      std::swap(field, next);
    }

    state_.t = t + dt;
    ++state_.steps;

    for (int k = 0; k < N; ++k) {
      const auto& lymph = collector_.lymphangions[k];
      auto& vs = state_.vessels[k];
      const double A_bar = vs.field.A.mean();
      double tau_sum = 0.0;
      for (int i = 0; i < vs.field.size(); ++i) tau_sum += lymph.wall.wall_shear_stress(vs.field.A(i), vs.field.q(i));
      vs.efmc = efmc_step(vs.efmc, A_bar, tau_sum / vs.field.size(), lymph.efmc, dt);
    }
  } catch (const SimulationError&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "step at t = " << t << " failed: " << e.what();
    throw SimulationError(msg.str());
  }
  return dt;
}

Trajectory Simulation::make_trajectory() const {
  std::vector<bool> present;
  for (const auto& v : collector_.valves) present.push_back(v.has_value());
  return Trajectory(collector_.size(), std::move(present), config_.probes);
}

void Simulation::record(Trajectory& out) const {
  const int N = collector_.size();
  double* row = out.append_row();
  *row++ = state_.t;
  for (int k = 0; k < N; ++k) {
    const auto& vs = state_.vessels[k];
    const auto& wall = collector_.lymphangions[k].wall;
    double tau_sum = 0.0;
    for (int i = 0; i < vs.field.size(); ++i) tau_sum += wall.wall_shear_stress(vs.field.A(i), vs.field.q(i));
    for (int j = 0; j < 4; ++j) *row++ = vs.efmc(j);
    *row++ = vs.field.A.mean();
    *row++ = tau_sum / vs.field.size();
    *row++ = vs.field.volume(grids_[k].dx);
  }
  for (int k = 0; k < N; ++k) {
    const auto& vs = state_.vessels[k];
    const auto& wall = collector_.lymphangions[k].wall;
    const double s = vs.efmc(kS);
    const int M = grids_[k].M;
    for (double f : config_.probes) {
      const double g = std::clamp(f * M - 0.5, 0.0, M - 1.0);
      const int i0 = std::min(static_cast<int>(std::floor(g)), M - 2);
      const double w = g - i0;
      const auto value = [&](int i, int what) {
        const double A = vs.field.A(i), q = vs.field.q(i);
        switch (what) {
          case 0:
            return A;
          case 1:
            return q;
          case 2:
            return wall.pressure(A, s);
          default:
            return wall.wall_shear_stress(A, q);
        }
      };
      for (int what = 0; what < 4; ++what) *row++ = (1.0 - w) * value(i0, what) + w * value(i0 + 1, what);
    }
  }
  for (int k = 0; k <= N; ++k) {
    *row++ = state_.valves[k](kQv);
    *row++ = state_.valves[k](kXi);
    *row++ = state_.valve_dp[k];
  }
  if (config_.record_fields) {
    out.field_times.push_back(state_.t);
    std::vector<ConservedField> snapshot;
    for (const auto& vs : state_.vessels) snapshot.push_back(vs.field);
    out.fields.push_back(std::move(snapshot));
  }
}

void Simulation::run(Trajectory& out) {
  if (out.vessels() != collector_.size()) out = make_trajectory();
  record(out);
  const double t_end = config_.t_output;
  bool recorded = true;
  while (state_.t < t_end * (1.0 - 1e-14)) {
    step(t_end - state_.t);
    recorded = false;
    if (state_.steps % config_.record_stride == 0) {
      record(out);
      recorded = true;
    }
  }
  if (!recorded) record(out);
}

Trajectory Simulation::run() {
  Trajectory out = make_trajectory();
  run(out);
  return out;
}

}  // namespace lymphax
