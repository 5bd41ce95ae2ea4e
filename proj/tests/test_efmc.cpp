#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "lymphax/efmc.hpp"

using namespace lymphax;

namespace {

EfmcParamsd table_params() {
  EfmcParamsd p;
  p.A_ca = 7.75 * 7.148e-9;
  return calibrated(p);
}

}  // namespace

TEST_CASE("nitric oxide inhibition") {
  EfmcParamsd p = table_params();
  CHECK(f_NO(0.0, p) == 1.0);
  CHECK(f_NO(1e6, p) == doctest::Approx(1.0 - p.k_no));
  CHECK(f_NO(p.tau_no, p) == doctest::Approx(0.63031).epsilon(1e-5));
  CHECK(f_NO(-p.tau_no, p) == f_NO(p.tau_no, p));
  for (double tau = 0.0; tau < 10.0; tau += 0.1) {
    CHECK(f_NO(tau, p) <= 1.0);
    CHECK(f_NO(tau, p) >= 1.0 - p.k_no);
  }
}

TEST_CASE("stimulus right-hand side") {
  const EfmcParamsd p = table_params();
  EfmcStated origin(0.0, 0.0, 0.3, 0.0);
  CHECK(f_I(p.A_ca, 0.0, origin, p) == doctest::Approx(p.k_ca1 + p.k_ca2));
  CHECK(f_I(0.5 * p.A_ca, 0.0, origin, p) == doctest::Approx(p.k_ca1 + p.k_ca2 / 1024.0));
  EfmcStated outside(0.5, 0.0, 0.0, 0.0);
  CHECK(f_I(p.A_ca, 0.0, outside, p) == 0.0);
  outside(kI) = 0.4;
  CHECK(f_I(p.A_ca, 0.0, outside, p) == doctest::Approx(-0.4 * p.k_rel));
  EfmcStated boundary(p.R_I, 0.0, 0.0, 0.0);
  CHECK(in_activation_region(boundary, p));
  CHECK_THROWS_AS(f_I(0.0, 0.0, origin, p), DomainError);
}

TEST_CASE("contraction right-hand side") {
  const EfmcParamsd p = table_params();
  CHECK(f_s(EfmcStated(0.3, 0.2, 0.0, 1.0), p) == 0.0);
  CHECK(f_s(EfmcStated(-0.1, 1.2, 0.0, 0.5), p) == 0.0);
  CHECK(f_s(EfmcStated(0.02, 0.1, 0.0, 0.0), p) == doctest::Approx(0.22));
  CHECK(f_s(EfmcStated(0.0, 0.5, 0.0, 0.4), p) == doctest::Approx(-3.0 * 0.4 * 0.5));
}

TEST_CASE("the origin is stationary for any stimulus") {
  const EfmcParamsd p = table_params();
  for (double I : {0.0, 0.3, 0.8, 2.0}) {
    const EfmcStated dy = efmc_rhs(EfmcStated(0.0, 0.0, I, 0.0), p.A_ca, 0.0, p);
    CHECK(dy(kV) == 0.0);
    CHECK(dy(kW) == 0.0);
    CHECK(dy(kS) == 0.0);
  }
  EfmcStated y(0.0, 0.0, 0.0, 0.0);
  for (int k = 0; k < 20000; ++k) y = efmc_step(y, p.A_ca, 0.0, p, 1e-3);
  CHECK(y(kV) == 0.0);
  CHECK(y(kW) == 0.0);
}

TEST_CASE("analytic jacobian matches finite differences") {
  const EfmcParamsd p = table_params();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.3, 0.6);
  for (int k = 0; k < 50; ++k) {
    EfmcStated y(u(rng), u(rng), std::abs(u(rng)), std::abs(u(rng)));
    const EfmcBranch branch = efmc_branch(y, p);
    const double rate = stimulus_growth_rate(p.A_ca, 0.0, p);
    const auto J = efmc_jacobian(y, branch, p);
    for (int j = 0; j < 4; ++j) {
      EfmcStated yp = y, ym = y;
      yp(j) += 1e-6;
      ym(j) -= 1e-6;
      const EfmcStated col = (efmc_rhs(yp, rate, branch, p) - efmc_rhs(ym, rate, branch, p)) / 2e-6;
      for (int i = 0; i < 4; ++i) CHECK(J(i, j) == doctest::Approx(col(i)).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("stationary classification thresholds") {
  EfmcParamsd p;
  CHECK(classify_stationary(0.0, p) == StationaryKind::StableNode);
  CHECK(classify_stationary(0.3, p) == StationaryKind::StableSpiral);
  CHECK(classify_stationary(0.5 + 1e-9, p) == StationaryKind::UnstableSpiral);
  CHECK(classify_stationary(1.0, p) == StationaryKind::UnstableNode);
  CHECK(std::string(to_string(StationaryKind::UnstableNode)) == "unstable node");

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> I(-0.5, 1.5);
  for (int k = 0; k < 500; ++k) {
    const double value = I(rng);
    Eigen::Matrix2d J;
    J << -p.a1 * (p.a2 - value), -p.a1, p.b1, 0.0;
    const Eigen::Vector2cd ev = J.eigenvalues();
    const bool unstable = ev(0).real() > 0;
    const bool complex = std::abs(ev(0).imag()) > 0;
    const auto kind = classify_stationary(value, p);
    CHECK(unstable == (kind == StationaryKind::UnstableSpiral || kind == StationaryKind::UnstableNode));
    CHECK(complex == (kind == StationaryKind::StableSpiral || kind == StationaryKind::UnstableSpiral));
  }
}

TEST_CASE("calibration of the stimulus growth rates") {
  const EfmcParamsd p = table_params();
  CHECK(trigger_mean(p) == doctest::Approx(0.67321).epsilon(1e-5));
  CHECK(p.k_ca1 == doctest::Approx(0.037400).epsilon(1e-4));
  CHECK(p.k_ca2 == doctest::Approx(0.63581).epsilon(1e-4));
  CHECK(trigger_min(p) < trigger_mean(p));
  CHECK(trigger_mean(p) < trigger_max(p));

  EfmcParamsd flat = p;
  flat.f_ca = flat.f_min;
  CHECK(derive_k_ca(flat).second == doctest::Approx(0.0).epsilon(1e-15));

  CHECK(std::abs(predicted_frequency(p.A_ca, 0.0, trigger_mean(p), p) - p.f_ca) < 1e-10);
  CHECK(predicted_frequency(1e-6 * p.A_ca, 0.0, trigger_mean(p), p) == doctest::Approx(p.f_min).epsilon(1e-10));

  EfmcParamsd bad = p;
  bad.f_min = 1.0;
  CHECK_THROWS_AS(derive_k_ca(bad), DomainError);
}

TEST_CASE("frequency monotonicity and band") {
  const EfmcParamsd p = table_params();
  const double I = trigger_mean(p);
  for (double tau = 0.0; tau < 5.0; tau += 0.05)
    CHECK(predicted_frequency(p.A_ca, tau + 0.05, I, p) < predicted_frequency(p.A_ca, tau, I, p));
  for (double r = 0.2; r < 1.5; r += 0.01)
    CHECK(predicted_frequency((r + 0.01) * p.A_ca, 0.2, I, p) > predicted_frequency(r * p.A_ca, 0.2, I, p));
  for (double r : {0.3, 0.8, 1.0, 1.2}) {
    const double A = r * p.A_ca;
    CHECK(predicted_frequency(A, 0.1, trigger_max(p), p) < predicted_frequency(A, 0.1, I, p));
    CHECK(predicted_frequency(A, 0.1, I, p) < predicted_frequency(A, 0.1, trigger_min(p), p));
  }
}

TEST_CASE("parameter invariants") {
  EfmcParamsd p = table_params();
  CHECK_NOTHROW(p.validate());
  EfmcParamsd q = p;
  q.b2 = 0.1;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = p;
  q.k_no = 1.2;
  CHECK_THROWS_AS(q.validate(), DomainError);
  q = p;
  q.t_excited = 30.0;
  CHECK_THROWS_AS(q.validate(), DomainError);
}

TEST_CASE("integrated trajectories") {
  EfmcParamsd p = table_params();
  p.k_ca1 = p.k_ca2 = 0.0;

  SUBCASE("subthreshold stimulus decays to the origin") {
    EfmcStated y(0.04, 0.0, p.a2 - 0.05, 0.0);
    for (int k = 0; k < 5000; ++k) y = efmc_step(y, p.A_ca, 0.0, p, 1e-3);
    CHECK(std::hypot(y(kV), y(kW)) < 1e-6);
  }
  SUBCASE("suprathreshold stimulus escapes the activation region") {
    EfmcStated y(0.01, 0.0, p.a2 + 2.0 * std::sqrt(p.b1 / p.a1) + 0.05, 0.0);
    bool escaped = false;
    for (int k = 0; k < 5000 && !escaped; ++k) {
      y = efmc_step(y, p.A_ca, 0.0, p, 1e-3);
      escaped = !in_activation_region(y, p);
    }
    CHECK(escaped);
  }
  SUBCASE("contraction state stays in the unit interval") {
    const EfmcParamsd q = table_params();
    EfmcStated y(0.1, 0.0, 0.0, 0.0);
    for (int k = 0; k < 30000; ++k) {
      y = efmc_step(y, 1.2 * q.A_ca, 0.0, q, 2e-3);
      REQUIRE(y(kS) >= 0.0);
      REQUIRE(y(kS) <= 1.0);
      REQUIRE(y(kI) >= 0.0);
    }
  }
}

TEST_CASE("excited time is close to two seconds") {
  const EfmcParamsd p = table_params();
  const double t = measure_excited_time(p, 60.0, 2e-3);
  CHECK(t > 1.0);
  CHECK(t < 3.0);
}
