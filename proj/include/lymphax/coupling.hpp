#pragma once

#include <optional>

#include "lymphax/vessel_wall.hpp"

namespace lymphax {

// beta = -1 at the left end of a downstream lymphangion, +1 at the right end of an upstream one.
enum class BoundarySide : int { DownstreamLeft = -1, UpstreamRight = 1 };

inline int beta(BoundarySide side) { return static_cast<int>(side); }

struct BoundaryState {
  double A;
  double q;
  int iterations = 0;
};

// Pressure difference across a valve: the adjacent cell pressure where a lymphangion exists,
// the imposed pressure program otherwise.
double assemble_dp(const std::optional<double>& upstream_cell_pressure,
                   const std::optional<double>& downstream_cell_pressure, const std::optional<double>& inflow_pressure,
                   const std::optional<double>& outflow_pressure);

BoundaryState boundary_state_from_valve_flow(double q_v, double A_n, double u_n, BoundarySide side,
                                             const VesselWalld& wall, double s);

BoundaryState boundary_state_from_pressure(double p, double A_n, double u_n, BoundarySide side,
                                           const VesselWalld& wall, double s);

}  // namespace lymphax
