#pragma once

#include <Eigen/Core>

#include "lymphax/vessel_wall.hpp"

namespace lymphax {

enum class WaveKind { Rarefaction, Shock };

const char* to_string(WaveKind kind);

struct RiemannStates {
  double A_L, u_L;
  double A_R, u_R;
};

struct RiemannSolution {
  RiemannStates data;
  double s = 0.0;  // contraction state of the wall
  double A_star = 0.0;
  double u_star = 0.0;
  WaveKind left_wave = WaveKind::Rarefaction;
  WaveKind right_wave = WaveKind::Rarefaction;
  // head and tail speeds; both equal the shock speed for a shock
  double left_head = 0.0, left_tail = 0.0;
  double right_head = 0.0, right_tail = 0.0;
  int iterations = 0;
};

RiemannSolution solve_riemann(const RiemannStates& states, const VesselWalld& wall, double s = 0.0);

// (A, u) at x/t = xi
Eigen::Vector2d sample(const RiemannSolution& solution, const VesselWalld& wall, double xi);

// Velocity jump function of one side: rarefaction integral or shock relation.
double wave_function(double A_star, double A_K, const VesselWalld& wall, double s);

}  // namespace lymphax
