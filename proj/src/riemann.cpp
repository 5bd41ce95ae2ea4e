#include "lymphax/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace lymphax {

const char* to_string(WaveKind kind) { return kind == WaveKind::Shock ? "shock" : "rarefaction"; }

double wave_function(double A_star, double A_K, const VesselWalld& wall, double s) {
  if (A_star <= A_K) return wall.riemann_integral(A_K, A_star, s);
  const double K = wall.stiffness(s);
  const double jump = wall.pressure_flux(A_star, K) - wall.pressure_flux(A_K, K);
  return std::sqrt(jump * (A_star - A_K) / (A_star * A_K));
}

namespace {

double wave_derivative(double A_star, double A_K, const VesselWalld& wall, double s) {
  if (A_star <= A_K) return wall.wave_speed(A_star, s) / A_star;
  const double h = 1e-7 * A_star;
  return (wave_function(A_star + h, A_K, wall, s) - wave_function(A_star - h, A_K, wall, s)) / (2.0 * h);
}

double shock_speed(double A_K, double u_K, double A_star, double u_star) {
  return (A_star * u_star - A_K * u_K) / (A_star - A_K);
}

}  // namespace

RiemannSolution solve_riemann(const RiemannStates& d, const VesselWalld& wall, double s) {
  if (!(d.A_L > 0) || !(d.A_R > 0)) throw DomainError("Riemann data require positive areas");
  const double c_L = wall.wave_speed(d.A_L, s);
  const double c_R = wall.wave_speed(d.A_R, s);
  if (std::abs(d.u_L) >= c_L || std::abs(d.u_R) >= c_R)
    throw DomainError("Riemann data must be subcritical");

  RiemannSolution sol;
  sol.data = d;
  sol.s = s;
  const auto residual = [&](double A) {
    return wave_function(A, d.A_L, wall, s) + wave_function(A, d.A_R, wall, s) + d.u_R - d.u_L;
  };

  double lo = std::min(d.A_L, d.A_R) / 10.0;
  double hi = 10.0 * std::max(d.A_L, d.A_R);
  for (int k = 0; residual(lo) > 0.0; ++k) {
    lo /= 10.0;
    if (k > 30) throw NumericalError("Riemann solver: vacuum or bracket failure");
  }
  for (int k = 0; residual(hi) < 0.0; ++k) {
    hi *= 10.0;
    if (k > 30) throw NumericalError("Riemann solver: bracket failure");
  }

  double A = 0.5 * (d.A_L + d.A_R);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    const double r = residual(A);
    sol.iterations = it + 1;
    if (std::abs(r) < 1e-12) {
      converged = true;
      break;
    }
    if (r > 0.0)
      hi = A;
    else
      lo = A;
    const double slope = wave_derivative(A, d.A_L, wall, s) + wave_derivative(A, d.A_R, wall, s);
    double next = A - r / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    A = next;
  }
  if (!converged) throw NumericalError("Riemann solver: no convergence after 100 iterations");

  const double fL = wave_function(A, d.A_L, wall, s);
  const double fR = wave_function(A, d.A_R, wall, s);
  sol.A_star = A;
  sol.u_star = 0.5 * (d.u_L + d.u_R) + 0.5 * (fR - fL);
  const double c_star = wall.wave_speed(A, s);

  if (A > d.A_L) {
    sol.left_wave = WaveKind::Shock;
    sol.left_head = sol.left_tail = shock_speed(d.A_L, d.u_L, A, sol.u_star);
  } else {
    sol.left_wave = WaveKind::Rarefaction;
    sol.left_head = d.u_L - c_L;
    sol.left_tail = sol.u_star - c_star;
  }
  if (A > d.A_R) {
    sol.right_wave = WaveKind::Shock;
    sol.right_head = sol.right_tail = shock_speed(d.A_R, d.u_R, A, sol.u_star);
  } else {
    sol.right_wave = WaveKind::Rarefaction;
    sol.right_head = d.u_R + c_R;
    sol.right_tail = sol.u_star + c_star;
  }
  return sol;
}

Eigen::Vector2d sample(const RiemannSolution& sol, const VesselWalld& wall, double xi) {
  const auto& d = sol.data;
  const double s = sol.s;
  if (xi <= sol.u_star) {
    if (xi <= sol.left_head) return {d.A_L, d.u_L};
    if (xi >= sol.left_tail) return {sol.A_star, sol.u_star};
    // inside the left fan: u - c = xi with u + integral of c/a constant
    const auto speed = [&](double A) { return d.u_L - wall.riemann_integral(d.A_L, A, s) - wall.wave_speed(A, s); };
    double lo = sol.A_star, hi = d.A_L;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (speed(mid) > xi)
        lo = mid;
      else
        hi = mid;
    }
    const double A = 0.5 * (lo + hi);
    return {A, d.u_L - wall.riemann_integral(d.A_L, A, s)};
  }
  if (xi >= sol.right_head) return {d.A_R, d.u_R};
  if (xi <= sol.right_tail) return {sol.A_star, sol.u_star};
  const auto speed = [&](double A) { return d.u_R + wall.riemann_integral(d.A_R, A, s) + wall.wave_speed(A, s); };
  double lo = sol.A_star, hi = d.A_R;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (speed(mid) < xi)
      lo = mid;
    else
      hi = mid;
  }
  const double A = 0.5 * (lo + hi);
  return {A, d.u_R + wall.riemann_integral(d.A_R, A, s)};
}

}  // namespace lymphax
