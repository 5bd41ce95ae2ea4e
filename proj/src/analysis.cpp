#include "lymphax/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "lymphax/units.hpp"

namespace lymphax {

std::vector<double> detect_onsets(const Trajectory& traj, int vessel, const CycleOptions& opt) {
  std::vector<double> onsets;
  if (traj.empty()) return onsets;
  bool armed = traj.efmc(0, vessel, kS) < opt.rearm;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double s0 = traj.efmc(i - 1, vessel, kS);
    const double s1 = traj.efmc(i, vessel, kS);
    if (armed && s0 < opt.onset && s1 >= opt.onset) {
      const double t0 = traj.time(i - 1), t1 = traj.time(i);
      const double t = t0 + (opt.onset - s0) / (s1 - s0) * (t1 - t0);
      if (t >= opt.transient) onsets.push_back(t);
      armed = false;
    }
    if (s1 < opt.rearm) armed = true;
  }
  return onsets;
}

namespace {

double diameter(double A) { return 2.0 * std::sqrt(A / std::numbers::pi); }

std::size_t first_at_or_after(const Trajectory& traj, double t) {
  std::size_t lo = 0, hi = traj.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (traj.time(mid) < t)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

// Trapezoidal time average over snapshots first..last.
template <typename F>
double time_average(const Trajectory& traj, std::size_t first, std::size_t last, F&& value) {
  if (last <= first) return value(first);
  double integral = 0.0;
  for (std::size_t i = first + 1; i <= last; ++i)
    integral += 0.5 * (value(i - 1) + value(i)) * (traj.time(i) - traj.time(i - 1));
  return integral / (traj.time(last) - traj.time(first));
}

}  // namespace

std::vector<CycleRecord> detect_cycles(const Trajectory& traj, int vessel, const CycleOptions& opt) {
  const auto onsets = detect_onsets(traj, vessel, opt);
  std::vector<CycleRecord> cycles;
  if (onsets.size() < 2) return cycles;
  const int centre = traj.probe_index(0.5);
  for (std::size_t k = 0; k + 1 < onsets.size(); ++k) {
    CycleRecord c;
    c.t_start = onsets[k];
    c.t_end = onsets[k + 1];
    c.first = first_at_or_after(traj, c.t_start);
    c.last = first_at_or_after(traj, c.t_end);
    if (c.last >= traj.size()) c.last = traj.size() - 1;
    if (c.last > c.first && traj.time(c.last) > c.t_end) --c.last;
    c.ESD = std::numeric_limits<double>::infinity();
    c.EDD = -c.ESD;
    c.ESP = -c.ESD;
    c.ESV = c.ESD;
    c.EDV = -c.ESD;
    for (std::size_t i = c.first; i <= c.last; ++i) {
      const auto probe = traj.probe(i, vessel, centre);
      const double D = diameter(probe.A);
      if (D > c.EDD) {
        c.EDD = D;
        c.EDP = probe.p;
      }
      c.ESD = std::min(c.ESD, D);
      c.ESP = std::max(c.ESP, probe.p);
      const double V = traj.volume(i, vessel);
      c.ESV = std::min(c.ESV, V);
      c.EDV = std::max(c.EDV, V);
    }
    cycles.push_back(c);
  }
  return cycles;
}

const std::vector<std::pair<std::string, std::string>>& index_fields() {
  static const std::vector<std::pair<std::string, std::string>> fields = {
      {"frequency", "min^-1"},      {"EF", "-"},            {"SV", "nL"},
      {"FPF", "min^-1"},            {"CPF", "uL/h"},        {"CPFI", "-"},
      {"AMP", "um"},                {"SW", "nL*cmH2O"},     {"mean_flow", "uL/h"},
      {"mean_wss", "dyne/cm^2"},    {"mean_pressure", "cmH2O"}, {"peak_velocity", "mm/s"},
      {"ESD", "um"},                {"EDD", "um"},          {"ESP", "cmH2O"},
      {"EDP", "cmH2O"}};
  return fields;
}

std::vector<double> index_values(const IndexReport& r) {
  return {r.frequency, r.EF,        r.SV,            r.FPF,           r.CPF, r.CPFI, r.AMP, r.SW,
          r.mean_flow, r.mean_wss,  r.mean_pressure, r.peak_velocity, r.ESD, r.EDD,  r.ESP, r.EDP};
}

double index_value(const IndexReport& report, const std::string& name) {
  const auto& fields = index_fields();
  const auto values = index_values(report);
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].first == name) return values[i];
  throw DomainError("unknown index '" + name + "'");
}

IndexReport compute_indexes(const std::vector<CycleRecord>& cycles, const Trajectory& traj, int vessel,
                            const CycleOptions& opt) {
  using namespace units;
  IndexReport r;
  if (traj.empty()) return r;
  const int centre = traj.probe_index(0.5);
  std::size_t first, last;
  if (cycles.empty()) {
    first = std::min(first_at_or_after(traj, opt.transient), traj.size() - 1);
    last = traj.size() - 1;
  } else {
    first = cycles.back().first;
    last = cycles.back().last;
  }
  r.t_start = traj.time(first);
  r.t_end = traj.time(last);
  r.mean_flow = time_average(traj, first, last, [&](std::size_t i) { return traj.probe(i, vessel, centre).q; }) /
                microlitre_per_hour;
  r.mean_wss = time_average(traj, first, last, [&](std::size_t i) { return traj.probe(i, vessel, centre).tau; }) /
               dyne_per_cm2;
  r.mean_pressure =
      time_average(traj, first, last, [&](std::size_t i) { return traj.probe(i, vessel, centre).p; }) / cmH2O;
  if (cycles.empty()) return r;

  const auto& c = cycles.back();
  r.contracting = true;
  r.cycles = static_cast<int>(cycles.size());
  r.t_start = c.t_start;
  r.t_end = c.t_end;
  r.frequency = 60.0 / (c.t_end - c.t_start);
  r.EF = 1.0 - c.ESV / c.EDV;
  r.SV = (c.EDV - c.ESV) / nanolitre;
  r.FPF = r.EF * r.frequency;
  r.CPF = r.SV * r.frequency * 60.0 * nanolitre / microlitre;
  r.CPFI = r.mean_flow != 0.0 ? std::abs(r.CPF / r.mean_flow) : 0.0;
  r.ESD = c.ESD / micrometre;
  r.EDD = c.EDD / micrometre;
  r.AMP = r.EDD - r.ESD;
  r.ESP = c.ESP / cmH2O;
  r.EDP = c.EDP / cmH2O;

  double work = 0.0, peak = 0.0;
  for (std::size_t i = c.first; i <= c.last; ++i) {
    const auto probe = traj.probe(i, vessel, centre);
    peak = std::max(peak, std::abs(probe.q / probe.A));
    const std::size_t next = i == c.last ? c.first : i + 1;
    const double p_mid = 0.5 * (probe.p + traj.probe(next, vessel, centre).p);
    work -= p_mid * (traj.volume(next, vessel) - traj.volume(i, vessel));
  }
  r.SW = work / (nanolitre * cmH2O);
  r.peak_velocity = peak / millimetre;
  return r;
}

IndexReport analyse(const Trajectory& traj, int vessel, const CycleOptions& opt) {
  return compute_indexes(detect_cycles(traj, vessel, opt), traj, vessel, opt);
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace lymphax
