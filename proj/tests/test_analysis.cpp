#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lymphax/analysis.hpp"
#include "lymphax/units.hpp"

using namespace lymphax;

namespace {

constexpr double kLength = 1.5e-3;

double area_of(double diameter) { return std::numbers::pi * 0.25 * diameter * diameter; }

// One lymphangion probed at 0, 0.5, 1 without valves. Every column is set from the
// diameter, flow and contraction state supplied per sample.
template <typename Sample>
Trajectory synthetic(double t_end, double dt, Sample&& sample) {
  Trajectory traj(1, {false, false}, {0.0, 0.5, 1.0});
  const long samples = std::lround(t_end / dt);
  for (long k = 0; k <= samples; ++k) {
    const double t = k * dt;
    const auto [D, q, p, s] = sample(t);
    const double A = area_of(D);
    double* row = traj.append_row();
    *row++ = t;
    *row++ = 0.0;
    *row++ = 0.0;
    *row++ = 0.0;
    *row++ = s;
    *row++ = A;
    *row++ = 0.0;
    *row++ = A * kLength;
    for (int probe = 0; probe < 3; ++probe) {
      *row++ = A;
      *row++ = q;
      *row++ = p;
      *row++ = -q / A * 1e-3 * 4.0 / std::sqrt(A / std::numbers::pi);
    }
    for (int slot = 0; slot < 2; ++slot) {
      *row++ = 0.0;
      *row++ = 0.0;
      *row++ = 0.0;
    }
  }
  return traj;
}

struct Sample {
  double D, q, p, s;
};

SensitivityProblem toy_problem() {
  SensitivityProblem problem;
  problem.parameters = {"x", "y"};
  problem.reference = {2.0, -3.0};
  problem.signs = {1.0, -1.0};
  problem.indexes = {"x", "constant", "y squared"};
  problem.evaluate = [](const std::vector<double>& point) -> std::optional<std::vector<double>> {
    return std::vector<double>{point[0], 7.0, point[1] * point[1]};
  };
  return problem;
}

}  // namespace

TEST_CASE("no contraction means no cycles") {
  const auto traj = synthetic(60.0, 0.01, [](double) { return Sample{200e-6, 1e-12, 300.0, 0.0}; });
  CHECK(detect_cycles(traj, 0).empty());
  const IndexReport r = analyse(traj, 0);
  CHECK_FALSE(r.contracting);
  CHECK(r.EF == 0.0);
  CHECK(r.SV == 0.0);
  CHECK(r.CPF == 0.0);
  CHECK(r.CPFI == 0.0);
  CHECK(r.mean_flow == doctest::Approx(1e-12 / units::microlitre_per_hour));
  CHECK(r.mean_pressure == doctest::Approx(300.0 / units::cmH2O));
}

TEST_CASE("square wave period is recovered exactly") {
  const double T = 7.5;
  const auto traj = synthetic(120.0, 0.001, [&](double t) {
    const double phase = std::fmod(t, T);
    return Sample{200e-6, 0.0, 0.0, phase >= 1.0005 && phase < 4.0005 ? 0.8 : 0.0};
  });
  const auto onsets = detect_onsets(traj, 0);
  REQUIRE(onsets.size() >= 3);
  for (std::size_t k = 1; k < onsets.size(); ++k) CHECK(onsets[k] - onsets[k - 1] == doctest::Approx(T).epsilon(1e-9));
  CHECK(onsets.front() >= 30.0);
  const IndexReport r = analyse(traj, 0);
  CHECK(r.frequency == doctest::Approx(60.0 / T).epsilon(1e-9));
}

TEST_CASE("hysteresis ignores ripple around the onset threshold") {
  const auto traj = synthetic(80.0, 0.001, [](double t) {
    const double phase = std::fmod(t, 10.0);
    double s = phase < 3.0 ? 0.5 * std::sin(std::numbers::pi * phase / 3.0) : 0.0;
    if (phase > 1.0 && phase < 1.5) s = 0.04 + 0.02 * std::sin(40.0 * phase);
    return Sample{200e-6, 0.0, 0.0, s};
  });
  CycleOptions opt;
  opt.transient = 0.0;
  const auto onsets = detect_onsets(traj, 0, opt);
  CHECK(onsets.size() == 8);
}

TEST_CASE("indexes of a cylindrical pump") {
  const double EDD = 243.08e-6, ESD = 142.45e-6;
  const double T = 8.0;
  const auto traj = synthetic(100.0, 0.002, [&](double t) {
    const double phase = std::fmod(t, T) / T;
    const double squeeze = phase < 0.4 ? std::sin(std::numbers::pi * phase / 0.4) : 0.0;
    const double D = EDD - (EDD - ESD) * squeeze;
    const double p = (3.0 + 6.0 * squeeze) * units::cmH2O;
    return Sample{D, 2e-12 + 1e-12 * std::cos(2.0 * std::numbers::pi * phase), p, 0.9 * squeeze};
  });
  const auto cycles = detect_cycles(traj, 0);
  REQUIRE(cycles.size() >= 4);
  const IndexReport r = compute_indexes(cycles, traj, 0);
  CHECK(r.contracting);
  CHECK(r.EDD == doctest::Approx(243.08).epsilon(1e-6));
  CHECK(r.ESD == doctest::Approx(142.45).epsilon(1e-4));
  CHECK(r.SV == doctest::Approx(45.7).epsilon(1e-3));
  CHECK(r.EF == doctest::Approx(0.657).epsilon(1e-3));
  CHECK(r.EDP == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.ESP == doctest::Approx(9.0).epsilon(1e-4));
  CHECK(r.frequency == doctest::Approx(60.0 / T).epsilon(1e-9));

  CHECK(std::abs(r.FPF - r.EF * r.frequency) <= 1e-10 * r.FPF);
  CHECK(std::abs(r.CPF - r.SV * r.frequency * 60.0 * 1e-3) <= 1e-10 * r.CPF);
  CHECK(r.AMP == r.EDD - r.ESD);
  CHECK(r.CPFI == doctest::Approx(std::abs(r.CPF / r.mean_flow)));
  CHECK(r.mean_flow == doctest::Approx(2e-12 / units::microlitre_per_hour).epsilon(1e-3));
  CHECK(r.peak_velocity > 0.0);
  // pressure is a single-valued function of volume here, so the loop encloses no area
  CHECK(std::abs(r.SW) <= 1e-9 * r.SV * (r.ESP - r.EDP));
  for (const auto& c : cycles) {
    CHECK(c.EDD >= c.ESD);
    CHECK(c.EDV >= c.ESV);
    CHECK(c.t_end > c.t_start);
  }
}

TEST_CASE("index lookup by name") {
  IndexReport r;
  r.CPF = 12.0;
  r.EDP = 3.0;
  CHECK(index_value(r, "CPF") == 12.0);
  CHECK(index_value(r, "EDP") == 3.0);
  CHECK(index_fields().size() == index_values(r).size());
  CHECK_THROWS_AS(index_value(r, "cardiac output"), DomainError);
}

TEST_CASE("local sensitivity of analytic indexes") {
  const SensitivityProblem problem = toy_problem();
  SensitivityOptions opt;
  const auto sample = sensitivity_at(problem, {2.0, -3.0}, opt);
  CHECK(sample.S[0][0] == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(sample.S[0][1] == 0.0);
  CHECK(sample.S[1][1] == 0.0);
  CHECK(sample.S[1][2] == doctest::Approx(-200.0).epsilon(1e-12));

  opt.active = {1};
  const auto partial = sensitivity_at(problem, {2.0, -3.0}, opt);
  CHECK(std::isnan(partial.S[0][0]));
  CHECK(partial.S[1][2] == doctest::Approx(-200.0).epsilon(1e-12));

  const auto a = local_sensitivity(problem, opt, 42);
  const auto b = local_sensitivity(problem, opt, 42);
  CHECK(a.point == b.point);
  CHECK(a.point != local_sensitivity(problem, opt, 43).point);
  for (std::size_t i = 0; i < a.point.size(); ++i) {
    CHECK(a.point[i] / problem.reference[i] >= 0.7);
    CHECK(a.point[i] / problem.reference[i] <= 1.3);
  }
}

TEST_CASE("failed evaluations leave gaps") {
  SensitivityProblem problem = toy_problem();
  problem.evaluate = [](const std::vector<double>& point) -> std::optional<std::vector<double>> {
    if (point[0] > 2.05) throw std::runtime_error("diverged");
    return std::vector<double>{point[0], 7.0, point[1] * point[1]};
  };
  const auto sample = sensitivity_at(problem, {2.0, -3.0}, SensitivityOptions{});
  CHECK(std::isnan(sample.S[0][0]));
  CHECK(std::isfinite(sample.S[1][2]));
}

TEST_CASE("percentile trimming and aggregation") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(10.0, 1.0);
  std::vector<double> values;
  for (int k = 0; k < 99; ++k) values.push_back(normal(rng));
  double clean = 0.0;
  for (double v : values) clean += v;
  clean /= values.size();
  values.push_back(1e6);

  const auto kept = trim_percentiles(values);
  CHECK(std::find(kept.begin(), kept.end(), 1e6) == kept.end());
  double mean = 0.0;
  for (double v : kept) mean += v;
  mean /= kept.size();
  CHECK(mean == doctest::Approx(clean).epsilon(1e-2));

  const auto [lo, hi] = percentile_bounds(values);
  CHECK(trim_to_bounds(kept, lo, hi) == kept);
  CHECK(trim_percentiles({}).empty());

  std::vector<std::vector<std::vector<double>>> same(20, {{1.5, -2.0}, {0.0, 4.0}});
  const auto result = aggregate_sensitivity(same);
  CHECK(result.mean[0][0] == 1.5);
  CHECK(result.mean[1][1] == 4.0);
  CHECK(result.sigma[0][1] == 0.0);
  CHECK(result.count[1][0] == 20);

  same[3][0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK(aggregate_sensitivity(same).count[0][0] == 19);
}

TEST_CASE("parallel loop runs every task once") {
  for (int workers : {1, 3}) {
    std::vector<std::atomic<int>> hits(50);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(5, 2, [](std::size_t i) {
                    if (i == 3) throw std::runtime_error("task failed");
                  }),
                  std::runtime_error);
}
