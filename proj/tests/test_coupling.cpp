#include <cmath>
#include <random>

#include "doctest.h"
#include "lymphax/coupling.hpp"
#include "lymphax/riemann.hpp"
#include "lymphax/units.hpp"

using namespace lymphax;

TEST_CASE("pressure difference across a valve") {
  CHECK(assemble_dp(250.0, 250.0, std::nullopt, std::nullopt) == 0.0);
  const double P_in = 3.0 * units::cmH2O;
  CHECK(assemble_dp(std::nullopt, P_in, P_in, std::nullopt) == 0.0);
  CHECK(assemble_dp(500.0, std::nullopt, std::nullopt, 400.0) == doctest::Approx(100.0));
  CHECK(assemble_dp(500.0, 300.0, 1.0, 2.0) == doctest::Approx(200.0));
  CHECK_THROWS_AS(assemble_dp(std::nullopt, 1.0, std::nullopt, std::nullopt), ConfigError);
  CHECK(beta(BoundarySide::DownstreamLeft) == -1);
  CHECK(beta(BoundarySide::UpstreamRight) == 1);
}

TEST_CASE("no valve flow leaves a resting boundary unchanged") {
  const VesselWalld wall;
  const double A_n = 2.7 * wall.A0();
  for (auto side : {BoundarySide::DownstreamLeft, BoundarySide::UpstreamRight}) {
    const auto state = boundary_state_from_valve_flow(0.0, A_n, 0.0, side, wall, 0.3);
    CHECK(state.A == doctest::Approx(A_n).epsilon(1e-14));
    CHECK(state.q == 0.0);
  }
}

TEST_CASE("valve coupling round trip") {
  const VesselWalld wall;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ratio(0.8, 6.0), vel(-0.05, 0.05), change(0.7, 1.4), contraction(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double A_n = ratio(rng) * wall.A0();
    const double u_n = vel(rng);
    const double s = contraction(rng);
    const double A_target = change(rng) * A_n;
    for (auto side : {BoundarySide::DownstreamLeft, BoundarySide::UpstreamRight}) {
      const double q_v = A_target * (u_n - beta(side) * wall.riemann_integral(A_n, A_target, s));
      const auto state = boundary_state_from_valve_flow(q_v, A_n, u_n, side, wall, s);
      CHECK(std::abs(state.A - A_target) <= 1e-9 * A_target);
      CHECK(state.q == q_v);
    }
  }
}

TEST_CASE("inflow inflates the receiving end") {
  const VesselWalld wall;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ratio(0.8, 6.0), flow(1e-13, 5e-11);
  for (int k = 0; k < 200; ++k) {
    const double A_n = ratio(rng) * wall.A0();
    const double q_v = flow(rng);
    CHECK(boundary_state_from_valve_flow(q_v, A_n, 0.0, BoundarySide::DownstreamLeft, wall, 0.0).A > A_n);
    CHECK(boundary_state_from_valve_flow(q_v, A_n, 0.0, BoundarySide::UpstreamRight, wall, 0.0).A < A_n);
  }
}

TEST_CASE("imposed pressure boundary") {
  const VesselWalld wall;
  const double A_n = 3.1 * wall.A0();
  const double p = wall.pressure(A_n, 0.2);
  for (auto side : {BoundarySide::DownstreamLeft, BoundarySide::UpstreamRight}) {
    const auto state = boundary_state_from_pressure(p, A_n, 0.0, side, wall, 0.2);
    CHECK(state.A == doctest::Approx(A_n).epsilon(1e-12));
    CHECK(std::abs(state.q) < 1e-12 * A_n * wall.wave_speed(A_n, 0.2));
  }
  // higher imposed pressure pushes fluid into the vessel from either end
  const double high = 1.2 * p;
  CHECK(boundary_state_from_pressure(high, A_n, 0.0, BoundarySide::DownstreamLeft, wall, 0.2).q > 0.0);
  CHECK(boundary_state_from_pressure(high, A_n, 0.0, BoundarySide::UpstreamRight, wall, 0.2).q < 0.0);
}

TEST_CASE("shared invariant integral") {
  const VesselWalld wall;
  const double A0 = wall.A0();
  CHECK(wave_function(2.0 * A0, 4.0 * A0, wall, 0.5) == wall.riemann_integral(4.0 * A0, 2.0 * A0, 0.5));
}
