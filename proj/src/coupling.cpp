#include "lymphax/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lymphax {

double assemble_dp(const std::optional<double>& upstream_cell_pressure,
                   const std::optional<double>& downstream_cell_pressure, const std::optional<double>& inflow_pressure,
                   const std::optional<double>& outflow_pressure) {
  const auto up = upstream_cell_pressure ? upstream_cell_pressure : inflow_pressure;
  const auto down = downstream_cell_pressure ? downstream_cell_pressure : outflow_pressure;
  if (!up || !down) throw ConfigError("valve lacks both a neighbour and a pressure program on one side");
  return *up - *down;
}

BoundaryState boundary_state_from_valve_flow(double q_v, double A_n, double u_n, BoundarySide side,
                                             const VesselWalld& wall, double s) {
  if (!(A_n > 0)) throw DomainError("boundary cell area must be positive");
  const double b = beta(side);
  const double K = wall.stiffness(s);
  const double flux_scale = A_n * wall.wave_speed_unchecked(A_n, K);
  const double tolerance = 1e-12 * std::max(flux_scale, std::abs(q_v));

  const auto residual = [&](double A, double& integral) {
    integral = wall.riemann_integral_with_K(A_n, A, K);
    return q_v + A * (-u_n + b * integral);
  };
  const auto slope = [&](double A, double integral) {
    return -u_n + b * integral + b * wall.wave_speed_unchecked(A, K);
  };

  double A = A_n, integral = 0.0;
  double r = residual(A, integral);
  for (int it = 0; it < 30; ++it) {
    if (std::abs(r) <= tolerance) return {A, q_v, it};
    const double d = slope(A, integral);
    double next = A - r / d;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    if (std::abs(next - A) <= 1e-15 * A) return {next, q_v, it + 1};
    A = next;
    r = residual(A, integral);
  }

  // bisection on a bracket grown geometrically from A_n
  const double r_n = residual(A_n, integral);
  double lo = A_n, hi = A_n, r_lo = r_n;
  for (int k = 0;; ++k) {
    if (k > 60) {
      std::ostringstream msg;
      msg << "valve coupling: no bracket for q_v=" << q_v << " A_n=" << A_n << " u_n=" << u_n;
      throw NumericalError(msg.str());
    }
    const double factor = std::pow(1.5, k + 1);
    const double r_small = residual(A_n / factor, integral);
    if (r_small * r_n <= 0.0) {
      lo = A_n / factor;
      r_lo = r_small;
      hi = A_n;
      break;
    }
    if (residual(A_n * factor, integral) * r_n <= 0.0) {
      lo = A_n;
      r_lo = r_n;
      hi = A_n * factor;
      break;
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = residual(mid, integral);
    if (std::abs(r_mid) <= tolerance || hi - lo <= 1e-15 * hi) return {mid, q_v, 30 + it};
    if ((r_mid > 0.0) == (r_lo > 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  throw NumericalError("valve coupling: bisection did not converge");
}

BoundaryState boundary_state_from_pressure(double p, double A_n, double u_n, BoundarySide side,
                                           const VesselWalld& wall, double s) {
  if (!(A_n > 0)) throw DomainError("boundary cell area must be positive");
  const double A_I = wall.area_from_pressure(p, s, A_n);
  const double q = A_I * (u_n - beta(side) * wall.riemann_integral(A_n, A_I, s));
  return {A_I, q, 0};
}

}  // namespace lymphax
