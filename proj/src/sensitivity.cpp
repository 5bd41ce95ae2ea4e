#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lymphax/analysis.hpp"
#include "lymphax/errors.hpp"

namespace lymphax {

std::vector<double> draw_base_point(const SensitivityProblem& problem, double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(1.0 - spread, 1.0 + spread);
  std::vector<double> point(problem.reference.size());
  for (std::size_t i = 0; i < point.size(); ++i) point[i] = problem.reference[i] * factor(rng);
  return point;
}

SensitivitySample sensitivity_at(const SensitivityProblem& problem, const std::vector<double>& point,
                                 const SensitivityOptions& opt) {
  const std::size_t P = problem.parameters.size();
  const std::size_t J = problem.indexes.size();
  std::vector<int> active = opt.active;
  if (active.empty())
    for (std::size_t i = 0; i < P; ++i) active.push_back(static_cast<int>(i));

  // run 0 is the base point, then (minus, plus) per active parameter
  std::vector<std::vector<double>> points(1 + 2 * active.size(), point);
  for (std::size_t a = 0; a < active.size(); ++a) {
    const int i = active[a];
    points[1 + 2 * a][i] = point[i] * (1.0 - opt.epsilon);
    points[2 + 2 * a][i] = point[i] * (1.0 + opt.epsilon);
  }
  std::vector<std::optional<std::vector<double>>> results(points.size());
  parallel_for(points.size(), opt.workers, [&](std::size_t r) {
    try {
      results[r] = problem.evaluate(points[r]);
    } catch (const std::exception&) {
      results[r].reset();
    }
  });

  const double nan = std::numeric_limits<double>::quiet_NaN();
  SensitivitySample sample{point, std::vector<std::vector<double>>(P, std::vector<double>(J, nan))};
  if (!results[0]) return sample;
  const auto& base = *results[0];
  for (std::size_t a = 0; a < active.size(); ++a) {
    const auto& minus = results[1 + 2 * a];
    const auto& plus = results[2 + 2 * a];
    if (!minus || !plus) continue;
    const int i = active[a];
    const double sign = problem.signs.empty() ? (point[i] < 0 ? -1.0 : 1.0) : problem.signs[i];
    for (std::size_t j = 0; j < J; ++j) {
      const double value = sign / std::abs(base[j]) * ((*plus)[j] - (*minus)[j]) / (2.0 * opt.epsilon) * 100.0;
      sample.S[i][j] = std::isfinite(value) ? value : nan;
    }
  }
  return sample;
}

SensitivitySample local_sensitivity(const SensitivityProblem& problem, const SensitivityOptions& opt,
                                    std::uint64_t seed) {
  return sensitivity_at(problem, draw_base_point(problem, opt.spread, seed), opt);
}

std::pair<double, double> percentile_bounds(std::vector<double> values, double lower, double upper) {
  if (values.empty()) return {0.0, 0.0};
  std::sort(values.begin(), values.end());
  const auto at = [&](double pct) {
    const double rank = pct / 100.0 * (values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (rank - lo) * (values[hi] - values[lo]);
  };
  return {at(lower), at(upper)};
}

std::vector<double> trim_to_bounds(const std::vector<double>& values, double lo, double hi) {
  std::vector<double> kept;
  for (double v : values)
    if (v >= lo && v <= hi) kept.push_back(v);
  return kept;
}

std::vector<double> trim_percentiles(std::vector<double> values, double lower, double upper) {
  const auto [lo, hi] = percentile_bounds(values, lower, upper);
  return trim_to_bounds(values, lo, hi);
}

SensitivityResult aggregate_sensitivity(const std::vector<std::vector<std::vector<double>>>& matrices) {
  SensitivityResult result;
  if (matrices.empty()) return result;
  const std::size_t P = matrices.front().size();
  const std::size_t J = P ? matrices.front().front().size() : 0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.mean.assign(P, std::vector<double>(J, nan));
  result.sigma.assign(P, std::vector<double>(J, nan));
  result.count.assign(P, std::vector<int>(J, 0));
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < J; ++j) {
      std::vector<double> values;
      for (const auto& m : matrices)
        if (std::isfinite(m[i][j])) values.push_back(m[i][j]);
      const auto kept = trim_percentiles(values);
      if (kept.empty()) continue;
      double mean = 0.0;
      for (double v : kept) mean += v;
      mean /= kept.size();
      double var = 0.0;
      for (double v : kept) var += (v - mean) * (v - mean);
      result.mean[i][j] = mean;
      result.sigma[i][j] = std::sqrt(var / kept.size());
      result.count[i][j] = static_cast<int>(kept.size());
    }
  }
  return result;
}

}  // namespace lymphax
