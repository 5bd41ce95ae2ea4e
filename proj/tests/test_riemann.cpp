#include <cmath>

#include "doctest.h"
#include "lymphax/experiments.hpp"
#include "lymphax/riemann.hpp"

using namespace lymphax;

namespace {

VesselWalld inviscid_wall() {
  LymphPropertiesd props;
  props.mu = 0.0;
  return VesselWalld(TubeLawParamsd{}, VesselGeometryd{}, WallStiffnessd{}, props);
}

}  // namespace

TEST_CASE("identical states give a trivial solution") {
  const VesselWalld wall = inviscid_wall();
  const double A = 2.0 * wall.A0();
  const auto sol = solve_riemann({A, 0.1, A, 0.1}, wall);
  CHECK(sol.A_star == doctest::Approx(A).epsilon(1e-12));
  CHECK(sol.u_star == doctest::Approx(0.1).epsilon(1e-12));
  for (double xi : {-5.0, -0.5, 0.0, 0.3, 5.0}) {
    const auto Au = sample(sol, wall, xi);
    CHECK(Au(0) == doctest::Approx(A).epsilon(1e-12));
    CHECK(Au(1) == doctest::Approx(0.1).epsilon(1e-12));
  }
}

TEST_CASE("dam-break data give a left rarefaction and a right shock") {
  const VesselWalld wall = inviscid_wall();
  const double A0 = wall.A0();
  const RiemannStates data{4.0 * A0, 0.0, 3.0 * A0, 0.0};
  const auto sol = solve_riemann(data, wall);
  CHECK(sol.left_wave == WaveKind::Rarefaction);
  CHECK(sol.right_wave == WaveKind::Shock);
  CHECK(sol.A_star > data.A_R);
  CHECK(sol.A_star < data.A_L);
  CHECK(sol.u_star > 0.0);
  CHECK(std::string(to_string(sol.right_wave)) == "shock");

  SUBCASE("far field") {
    CHECK(sample(sol, wall, -1e3)(0) == data.A_L);
    CHECK(sample(sol, wall, 1e3)(0) == data.A_R);
    CHECK(sample(sol, wall, 1e3)(1) == data.u_R);
  }

  SUBCASE("generalised Riemann invariant across the fan") {
    const double invariant = data.u_L;
    for (int k = 1; k < 20; ++k) {
      const double xi = sol.left_head + (sol.left_tail - sol.left_head) * k / 20.0;
      const auto Au = sample(sol, wall, xi);
      CHECK(std::abs(Au(1) + wall.riemann_integral(data.A_L, Au(0), 0.0) - invariant) < 1e-9);
      CHECK(Au(1) - wall.wave_speed(Au(0), 0.0) == doctest::Approx(xi).epsilon(1e-9));
    }
  }

  SUBCASE("Rankine-Hugoniot conditions at the shock") {
    const double S = sol.right_head;
    const Vector2d Qs(sol.A_star, sol.A_star * sol.u_star);
    const Vector2d Qr(data.A_R, data.A_R * data.u_R);
    const Vector2d jump = wall.flux(Qs, 0.0) - wall.flux(Qr, 0.0);
    CHECK(std::abs(jump(0) - S * (Qs(0) - Qr(0))) <= 1e-9 * std::abs(jump(0)));
    CHECK(std::abs(jump(1) - S * (Qs(1) - Qr(1))) <= 1e-9 * std::abs(jump(1)));
    // Lax entropy condition for the second family
    CHECK(data.u_R + wall.wave_speed(data.A_R, 0.0) < S);
    CHECK(S < sol.u_star + wall.wave_speed(sol.A_star, 0.0));
  }

  SUBCASE("area profile is monotone") {
    double previous = sample(sol, wall, -3.0)(0);
    for (int k = 1; k <= 600; ++k) {
      const double A = sample(sol, wall, -3.0 + 6.0 * k / 600.0)(0);
      CHECK(A <= previous * (1.0 + 1e-14));
      previous = A;
    }
  }
}

TEST_CASE("shock relations from the wave function") {
  const VesselWalld wall = inviscid_wall();
  const double A0 = wall.A0();
  const auto sol = solve_riemann({2.0 * A0, 0.1, 2.0 * A0, -0.1}, wall);
  CHECK(sol.left_wave == WaveKind::Shock);
  CHECK(sol.right_wave == WaveKind::Shock);
  CHECK(sol.u_star == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(sol.left_head == doctest::Approx(-sol.right_head).epsilon(1e-9));
  const auto rare = solve_riemann({2.0 * A0, -0.08, 2.0 * A0, 0.08}, wall);
  CHECK(rare.left_wave == WaveKind::Rarefaction);
  CHECK(rare.right_wave == WaveKind::Rarefaction);
  CHECK(rare.A_star < 2.0 * A0);
}

TEST_CASE("supercritical data are rejected") {
  const VesselWalld wall = inviscid_wall();
  CHECK_THROWS_AS(solve_riemann({wall.A0(), 5.0, wall.A0(), 0.0}, wall), DomainError);
  CHECK_THROWS_AS(solve_riemann({-1.0, 0.0, wall.A0(), 0.0}, wall), DomainError);
}

TEST_CASE("exact solution is the finite-volume limit") {
  const VesselWalld wall = inviscid_wall();
  const double A0 = wall.A0();
  RiemannSettings settings;
  const auto exact = solve_riemann({4.0 * A0, 0.0, 3.0 * A0, 0.0}, wall);

  double previous = 1e300;
  for (int cells : {40, 100, 1000}) {
    const RiemannRun run = riemann_run(exact, wall, settings, cells, 0.9, Limiter::Minmod);
    CHECK(run.L1_area_ratio < previous);
    previous = run.L1_area_ratio;
  }

  const RiemannRun fine = riemann_run(exact, wall, settings, 8000, 0.9, Limiter::Minmod);
  // star region sits between the rarefaction tail and the shock
  const double L = wall.geometry().length;
  const double xi = 0.5 * (exact.left_tail + exact.right_head);
  const int cell = static_cast<int>((0.5 * L + xi * settings.t_end) / L * 8000);
  CHECK(fine.A_numerical(cell) == doctest::Approx(exact.A_star).epsilon(1e-3));
  CHECK(fine.u_numerical(cell) == doctest::Approx(exact.u_star).epsilon(1e-3));
}
