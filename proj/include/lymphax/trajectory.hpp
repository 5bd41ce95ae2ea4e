#pragma once

#include <cstddef>
#include <vector>

#include "lymphax/efmc.hpp"
#include "lymphax/hyperbolic.hpp"

namespace lymphax {

struct ProbeSample {
  double A, q, p, tau;
};

struct ValveSample {
  double q_v, xi, dp;
};

// Recorded snapshots of a run. Each row holds the time, per-lymphangion EFMC state and
// means, per-probe cell data and per-valve-slot state.
class Trajectory {
 public:
  static constexpr int kVesselWidth = 7;
  static constexpr int kProbeWidth = 4;
  static constexpr int kValveWidth = 3;

  Trajectory() = default;
  Trajectory(int vessels, std::vector<bool> valve_present, std::vector<double> probes);

  int vessels() const { return vessels_; }
  int valve_slots() const { return static_cast<int>(valve_present_.size()); }
  bool valve_present(int slot) const { return valve_present_[slot]; }
  const std::vector<double>& probes() const { return probes_; }
  int probe_index(double fraction) const;

  std::size_t size() const { return width_ ? data_.size() / width_ : 0; }
  bool empty() const { return size() == 0; }

  double time(std::size_t i) const { return data_[i * width_]; }
  double efmc(std::size_t i, int vessel, EfmcIndex which) const { return at(i, vessel_offset(vessel) + which); }
  double mean_area(std::size_t i, int vessel) const { return at(i, vessel_offset(vessel) + 4); }
  double mean_wss(std::size_t i, int vessel) const { return at(i, vessel_offset(vessel) + 5); }
  double volume(std::size_t i, int vessel) const { return at(i, vessel_offset(vessel) + 6); }
  ProbeSample probe(std::size_t i, int vessel, int probe) const;
  ValveSample valve(std::size_t i, int slot) const;

  // Row builder used by the time loop.
  double* append_row();

  // Full per-cell fields, only filled when requested.
  std::vector<double> field_times;
  std::vector<std::vector<ConservedField>> fields;

 private:
  double at(std::size_t i, int column) const { return data_[i * width_ + column]; }
  int vessel_offset(int vessel) const { return 1 + vessel * kVesselWidth; }
  int probe_offset(int vessel, int probe) const {
    return 1 + vessels_ * kVesselWidth + (vessel * static_cast<int>(probes_.size()) + probe) * kProbeWidth;
  }
  int valve_offset(int slot) const {
    return 1 + vessels_ * kVesselWidth + vessels_ * static_cast<int>(probes_.size()) * kProbeWidth +
           slot * kValveWidth;
  }

  int vessels_ = 0;
  std::vector<bool> valve_present_;
  std::vector<double> probes_;
  std::size_t width_ = 0;
  std::vector<double> data_;
};

}  // namespace lymphax
